#include "barrec/trace.hpp"

#include <string>

#include "barrec/error.hpp"

namespace barrec {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::psi_enter: return "psi_enter";
    case EventKind::psi_exit: return "psi_exit";
    case EventKind::eps_call: return "eps_call";
    case EventKind::q_query: return "q_query";
    case EventKind::update_applied: return "update_applied";
    case EventKind::wr_step: return "wr_step";
  }
  return "unknown";
}

UpdateSequence extract_updates(const std::vector<TraceEvent>& events, Nat width,
                               const std::vector<ScriptMove>& script) {
  UpdateSequence out;
  out.width = width;
  std::vector<Elem> update_values;
  for (const auto& ev : events) {
    if (ev.kind == EventKind::psi_enter) {
      std::vector<Elem> row(width, kDefault);
      for (const auto& [k, v] : ev.entries)
        if (k < width) row[k] = v;
      out.snapshots.push_back(std::move(row));
    } else if (ev.kind == EventKind::update_applied) {
      if (ev.value) update_values.push_back(*ev.value);
    }
  }
  if (out.snapshots.size() != script.size() + 1)
    throw Error(ErrorKind::verification,
                "expected " + std::to_string(script.size() + 1) + " activations, trace has " +
                    std::to_string(out.snapshots.size()));
  if (update_values.size() != script.size())
    throw Error(ErrorKind::verification,
                "expected " + std::to_string(script.size()) + " updates, trace has " +
                    std::to_string(update_values.size()));
  for (std::size_t i = 0; i < script.size(); ++i) {
    if (update_values[i] != script[i].value)
      throw Error(ErrorKind::verification,
                  "update " + std::to_string(i) + " committed " +
                      std::to_string(update_values[i].value()) + ", script says " +
                      std::to_string(script[i].value.value()));
  }
  return out;
}

}  // namespace barrec
