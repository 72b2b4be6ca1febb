#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "barrec/elem.hpp"

namespace barrec {

// Every failure the library raises deliberately carries a kind so callers
// (notably the CLI) can map it onto an exit code without string matching.
enum class ErrorKind {
  config,        // malformed input / unusable parameters
  validation,    // a checked side condition failed, witness attached
  verification,  // a result check (realization, equation) failed
  fuel,          // a resource cap was hit
  cycle,         // non-well-founded recursion detected
  guard,         // a guarded call was violated under strict mode
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::string msg) : Error(ErrorKind::config, std::move(msg)) {}
};

// A resource cap was exceeded.  `cap` names which one.
class FuelError : public Error {
 public:
  enum class Cap { depth, dom, queries };

  FuelError(Cap cap, std::string msg, Nat depth, Nat dom_size, Nat index = 0)
      : Error(ErrorKind::fuel, std::move(msg)),
        cap(cap),
        depth(depth),
        dom_size(dom_size),
        index(index) {}

  Cap cap;
  Nat depth;     // recursion depth at failure
  Nat dom_size;  // |dom(u)| of the active partial sequence
  Nat index;     // offending sequence index for query caps
};

// Recursion re-entered an index while it was still being computed.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<Nat> path)
      : Error(ErrorKind::cycle, "non-well-founded recursion: cycle " + render(path)),
        path(std::move(path)) {}

  std::vector<Nat> path;

 private:
  static std::string render(const std::vector<Nat>& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(p[i]);
    }
    return out + "]";
  }
};

// The freshness side condition was violated at a call site: the chosen
// update index is already settled for the activation that asked for it.
class ConditionError : public Error {
 public:
  ConditionError(Nat n, Nat m, std::vector<Nat> u_dom, std::string msg)
      : Error(ErrorKind::validation, std::move(msg)), n(n), m(m), u_dom(std::move(u_dom)) {}

  Nat n;
  Nat m;
  std::vector<Nat> u_dom;
};

// A generated sequence segment's domain is not the exact down-set it claims.
class ClosednessError : public Error {
 public:
  explicit ClosednessError(std::string msg) : Error(ErrorKind::validation, std::move(msg)) {}
};

class GuardError : public Error {
 public:
  explicit GuardError(std::string msg) : Error(ErrorKind::guard, std::move(msg)) {}
};

// No witness within the declared search bound.
class WitnessError : public Error {
 public:
  WitnessError(Nat n, std::string msg) : Error(ErrorKind::verification, std::move(msg)), n(n) {}
  Nat n;
};

// A relation was asked about indices beyond its declared fragment.
class BoundError : public Error {
 public:
  explicit BoundError(std::string msg) : Error(ErrorKind::config, std::move(msg)) {}
};

}  // namespace barrec
