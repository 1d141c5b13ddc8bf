#pragma once

#include "ptpn/solver.hpp"

#include <json.hpp>

#include <optional>

namespace ptpn {

// {verdict, threshold, iterations, exhausted_bounds, witness, replay}
nlohmann::json verdict_report(const Query& q, const Verdict& v, const std::optional<Replay>& replay,
                              const Rational& delta);

nlohmann::json optimum_report(const Net& net, const OptResult& r);

// Per-step and cumulative costs of a replayed computation.
nlohmann::json run_report(const Net& net, const Computation& c, const RunResult& r);

} // namespace ptpn
