#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "barrec/elem.hpp"

namespace barrec {

enum class EventKind {
  psi_enter,       // a recursion activation starts; entries carry its state
  psi_exit,        // ... and finishes with `value`
  eps_call,        // a selection function was consulted for index n (update at m)
  q_query,         // an outcome functional read `index`, observing `value`
  update_applied,  // a recursive call is about to start with index := value
  wr_step,         // one well-founded filler evaluation
};

const char* event_kind_name(EventKind k);

struct TraceEvent {
  Nat seq = 0;
  EventKind kind = EventKind::psi_enter;
  std::vector<Nat> u_dom;  // sorted domain of the activation's partial state

  std::optional<Nat> n;
  std::optional<Nat> m;
  std::optional<Nat> index;
  std::optional<Elem> value;
  std::vector<std::pair<Nat, Elem>> entries;  // materialised state, psi_enter only
};

// Append-only event collector.  One per run; never shared across threads.
class Trace {
 public:
  TraceEvent& emit(EventKind kind) {
    events_.push_back(TraceEvent{});
    events_.back().seq = next_seq_++;
    events_.back().kind = kind;
    return events_.back();
  }

  const std::vector<TraceEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }

 private:
  std::vector<TraceEvent> events_;
  Nat next_seq_ = 0;
};

struct ScriptMove {
  Nat index;   // the position the opponent challenges
  Elem value;  // the value it supplies for the resulting update
};

// The evolving first-`width` approximations of a scripted run, one snapshot
// per activation (so script length + 1 in a clean run).  Positions without a
// materialised value display as the default element.
struct UpdateSequence {
  Nat width = 0;
  std::vector<std::vector<Elem>> snapshots;
};

// Reconstructs the update sequence from a recorded trace and cross-checks it
// against the script that drove the run.
UpdateSequence extract_updates(const std::vector<TraceEvent>& events, Nat width,
                               const std::vector<ScriptMove>& script);

}  // namespace barrec
