#include "lamsec/outcome.hpp"

namespace lamsec {

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::value:
      return "value";
    case OutcomeKind::blame:
      return "blame";
    case OutcomeKind::nsu_error:
      return "nsu-error";
    case OutcomeKind::timeout:
      return "timeout";
    case OutcomeKind::stuck:
      return "stuck";
  }
  return "?";
}

Outcome Outcome::of_value(cc::Term v, Heap mu) {
  Outcome o;
  o.kind = OutcomeKind::value;
  o.value = std::move(v);
  o.heap = std::move(mu);
  return o;
}

Outcome Outcome::of_error(const cc::Term& error) {
  const auto& e = std::get<cc::Error>(error->kind);
  Outcome o;
  o.kind = e.kind == cc::ErrorKind::nsu ? OutcomeKind::nsu_error : OutcomeKind::blame;
  o.blame = e.blame;
  return o;
}

Outcome Outcome::timeout(std::string why) {
  Outcome o;
  o.kind = OutcomeKind::timeout;
  o.detail = std::move(why);
  return o;
}

Outcome Outcome::stuck(std::string why) {
  Outcome o;
  o.kind = OutcomeKind::stuck;
  o.detail = std::move(why);
  return o;
}

std::string describe(const Outcome& o) {
  switch (o.kind) {
    case OutcomeKind::value:
      return "value " + cc::to_string(o.value);
    case OutcomeKind::blame:
      return "blame " + o.blame;
    case OutcomeKind::nsu_error:
      return "nsu-error";
    case OutcomeKind::timeout:
      return "timeout (" + o.detail + ")";
    case OutcomeKind::stuck:
      return "stuck (" + o.detail + ")";
  }
  return "?";
}

int exit_code(const Outcome& o) {
  switch (o.kind) {
    case OutcomeKind::value:
      return 0;
    case OutcomeKind::blame:
      return 2;
    case OutcomeKind::nsu_error:
      return 3;
    case OutcomeKind::timeout:
    case OutcomeKind::stuck:
      return 4;
  }
  return 4;
}

}  // namespace lamsec
