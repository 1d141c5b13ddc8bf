#include "ptpn/report.hpp"

#include "ptpn/trace.hpp"

namespace ptpn {

nlohmann::json verdict_report(const Query& q, const Verdict& v, const std::optional<Replay>& replay,
                              const Rational& delta) {
	nlohmann::json j;
	j["verdict"] = verdict_name(v.kind);
	j["threshold"] = q.threshold;
	j["from"] = q.net.place(q.p_init).name;
	j["to"] = q.net.place(q.p_fin).name;
	auto its = nlohmann::json::array();
	for (const auto& it : v.iterations) its.push_back({{"k", it.k}, {"V", it.v_size}, {"U", it.u_size}});
	j["iterations"] = its;
	auto bounds = nlohmann::json::array();
	for (auto b : v.exhausted) bounds.push_back(bound_name(b));
	j["exhausted_bounds"] = bounds;
	j["witness"] = v.witness ? witness_to_json(q.net, *v.witness) : nlohmann::json::array();
	if (replay) {
		auto steps = nlohmann::json::array();
		for (const auto& s : replay->computation.steps) steps.push_back(step_to_json(q.net, s));
		j["replay"] = {{"delta", to_string(delta)},
		               {"cost", to_string(replay->total_cost)},
		               {"bound", to_string(replay->bound)},
		               {"initial", format_marking(q.net, replay->computation.initial)},
		               {"computation", steps}};
	}
	return j;
}

nlohmann::json optimum_report(const Net& net, const OptResult& r) {
	nlohmann::json j;
	switch (r.kind) {
	case OptResult::Kind::Infinite: j["optimum"] = "inf"; break;
	case OptResult::Kind::Value:
		j["optimum"] = r.value;
		j["exactness"] = r.exactness == OptResult::Exactness::Exact ? "exact" : "upper-bound";
		break;
	case OptResult::Kind::Unresolved: j["optimum"] = "unresolved"; break;
	}
	auto vs = nlohmann::json::array();
	for (auto k : r.verdicts) vs.push_back(verdict_name(k));
	j["verdicts"] = vs;
	if (r.witness) j["witness"] = witness_to_json(net, *r.witness);
	return j;
}

nlohmann::json run_report(const Net& net, const Computation& c, const RunResult& r) {
	auto steps = nlohmann::json::array();
	Rational total = 0;
	for (std::size_t i = 0; i < c.steps.size(); ++i) {
		total += r.step_costs[i];
		auto s = step_to_json(net, c.steps[i]);
		s["index"] = i;
		s["cost"] = to_string(r.step_costs[i]);
		s["cumulative"] = to_string(total);
		steps.push_back(std::move(s));
	}
	return {{"steps", steps}, {"total", to_string(r.total_cost)}, {"final", format_marking(net, r.final_marking)}};
}

} // namespace ptpn
