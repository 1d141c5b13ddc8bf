// ptpn: command-line front end for priced timed Petri nets.
#include "ptpn/delta_form.hpp"
#include "ptpn/region_ops.hpp"
#include "ptpn/report.hpp"
#include "ptpn/solver.hpp"
#include "ptpn/trace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ptpn;

constexpr int kYes = 0, kNo = 1, kUnknown = 2, kUsage = 64, kParse = 65, kInvalid = 70;

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Options {
	std::string net_path;
	std::string trace_path;
	std::string marking;
	std::string initial;
	std::string from, to;
	std::string delta_text;
	std::string pad = "cost";
	Cost threshold = 0;
	Cost max_threshold = 64;
	SearchBounds bounds;
	bool json = false;
};

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw InputError("cannot read " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Net load_net(const std::string& path) {
	try {
		return parse_net(read_file(path));
	} catch (const NetParseError& e) {
		throw InputError(path + ": " + e.what());
	}
}

Rational delta_of(const Options& o, const char* fallback) {
	Rational d;
	try {
		d = parse_rational(o.delta_text.empty() ? fallback : o.delta_text);
		check_delta(d);
	} catch (const std::invalid_argument& e) {
		throw UsageError(std::string("--delta: ") + e.what());
	}
	return d;
}

PlaceId place_of(const Net& net, const std::string& name, const char* flag) {
	auto p = net.place_id(name);
	if (!p) throw UsageError(std::string(flag) + ": unknown place '" + name + "'");
	return *p;
}

SolverOptions solver_options(const Options& o) {
	SolverOptions s;
	s.bounds = o.bounds;
	if (o.pad == "count")
		s.pad = PadBound::TokenCount;
	else if (o.pad == "cost")
		s.pad = PadBound::TokenCost;
	else
		throw UsageError("--pad must be 'count' or 'cost'");
	return s;
}

std::string plural(std::size_t n, const char* word) { return std::to_string(n) + " " + word + (n == 1 ? "" : "s"); }

int cmd_validate(const Options& o) {
	Net net = load_net(o.net_path);
	if (o.json) {
		auto places = nlohmann::json::array();
		for (const auto& p : net.places()) places.push_back({{"name", p.name}, {"cost", p.cost}});
		auto transitions = nlohmann::json::array();
		for (const auto& t : net.transitions())
			transitions.push_back({{"name", t.name}, {"cost", t.cost}, {"inputs", t.inputs.size()}, {"outputs", t.outputs.size()}});
		std::cout << nlohmann::json{{"cmax", net.cmax()}, {"places", places}, {"transitions", transitions},
		                            {"canonical", serialize_net(net)}}
		                 .dump(2)
		          << '\n';
		return 0;
	}
	std::cout << serialize_net(net);
	std::cout << "cmax=" << net.cmax() << ", " << plural(net.places().size(), "place") << ", "
	          << plural(net.transitions().size(), "transition") << '\n';
	for (const auto& p : net.places()) std::cout << "  place " << p.name << ": storage cost " << p.cost << '\n';
	for (const auto& t : net.transitions())
		std::cout << "  transition " << t.name << ": firing cost " << t.cost << ", " << t.inputs.size() << " in, "
		          << t.outputs.size() << " out\n";
	return 0;
}

int cmd_simulate(const Options& o) {
	Net net = load_net(o.net_path);
	Trace trace;
	try {
		trace = parse_trace(net, read_file(o.trace_path));
	} catch (const TraceParseError& e) {
		throw InputError(o.trace_path + ": " + e.what());
	}
	Computation c;
	if (!o.initial.empty()) {
		try {
			c.initial = parse_marking(net, o.initial);
		} catch (const std::invalid_argument& e) {
			throw InputError(std::string("--initial: ") + e.what());
		}
	} else if (trace.initial) {
		c.initial = *trace.initial;
	} else {
		throw UsageError("the trace has no \"initial\" line; pass --initial");
	}
	c.steps = trace.steps;
	std::optional<Rational> delta;
	if (!o.delta_text.empty()) delta = delta_of(o, "1/1000");

	RunResult result;
	try {
		result = run(net, c);
	} catch (const ReplayError& e) {
		if (o.json)
			std::cout << nlohmann::json{{"error", reason_name(e.reason())}, {"index", e.index()}, {"message", e.what()}}.dump(2) << '\n';
		else
			std::cerr << "invalid step " << e.index() << " (" << reason_name(e.reason()) << "): " << e.what() << '\n';
		return kInvalid;
	}

	auto report = run_report(net, c, result);
	if (delta) {
		bool delta_form = is_delta_computation(net, c, *delta);
		report["delta"] = to_string(*delta);
		report["delta_form"] = delta_form;
		Marking m = c.initial;
		for (std::size_t i = 0; i < c.steps.size(); ++i) {
			if (const auto* d = std::get_if<Delay>(&c.steps[i])) {
				report["steps"][i]["detailed"] = is_detailed_delay(m, d->duration);
				m = delay_step(net, m, d->duration).marking;
			} else {
				const auto& f = std::get<Fire>(c.steps[i]);
				m = fire_step(net, m, f.transition, f.consumed, f.produced).marking;
			}
		}
	}
	if (o.json) {
		std::cout << report.dump(2) << '\n';
		return 0;
	}
	for (const auto& s : report["steps"]) {
		std::cout << "step " << s["index"].get<std::size_t>() << ": ";
		if (s.contains("delay"))
			std::cout << "delay " << s["delay"].get<std::string>();
		else
			std::cout << "fire " << s["fire"].get<std::string>();
		std::cout << "  cost " << s["cost"].get<std::string>() << "  cumulative " << s["cumulative"].get<std::string>();
		if (s.contains("detailed")) std::cout << (s["detailed"].get<bool>() ? "  detailed" : "  not detailed");
		std::cout << '\n';
	}
	std::cout << "total " << report["total"].get<std::string>() << '\n';
	if (delta) std::cout << "delta-form: " << (report["delta_form"].get<bool>() ? "true" : "false") << " at delta=" << to_string(*delta) << '\n';
	return 0;
}

int cmd_abstract(const Options& o) {
	Net net = load_net(o.net_path);
	Marking m;
	try {
		m = parse_marking(net, o.marking);
	} catch (const std::invalid_argument& e) {
		throw InputError(std::string("marking: ") + e.what());
	}
	Rational delta = delta_of(o, "1/10");
	if (!is_delta_form(m, delta)) {
		std::string bad;
		for (const auto& t : m.tokens()) {
			Rational f = frac(t.age);
			if (!(f == 0 || f < delta || f > 1 - delta)) bad = format_token(net, t);
		}
		if (o.json)
			std::cout << nlohmann::json{{"error", "not-delta-form"}, {"token", bad}}.dump(2) << '\n';
		else
			std::cerr << "not in delta-form at delta=" << to_string(delta) << ": " << bad << '\n';
		return kInvalid;
	}
	Region r = abstract(net, m, delta);
	if (o.json)
		std::cout << nlohmann::json{{"region", region_to_json(net, r)}, {"literal", format_region(net, r)}}.dump(2) << '\n';
	else
		std::cout << format_region(net, r) << '\n';
	return 0;
}

int verdict_exit(Verdict::Kind k) {
	return k == Verdict::Kind::Yes ? kYes : k == Verdict::Kind::No ? kNo : kUnknown;
}

int cmd_check(const Options& o) {
	Net net = load_net(o.net_path);
	Query q{net, place_of(net, o.from, "--from"), place_of(net, o.to, "--to"), o.threshold};
	Rational delta = delta_of(o, "1/1000");
	auto verdict = cost_threshold(q, solver_options(o));
	std::optional<Replay> replay;
	if (verdict.witness) replay = replay_witness(net, *verdict.witness, delta);
	auto report = verdict_report(q, verdict, replay, delta);
	if (o.json) {
		std::cout << report.dump(2) << '\n';
		return verdict_exit(verdict.kind);
	}
	std::cout << "verdict: " << report["verdict"].get<std::string>() << " (threshold " << o.threshold << ")\n";
	for (const auto& it : verdict.iterations) std::cout << "  k=" << it.k << " |V|=" << it.v_size << " |U|=" << it.u_size << '\n';
	for (auto b : verdict.exhausted) std::cout << "  exhausted bound: " << bound_name(b) << '\n';
	if (verdict.witness) {
		std::cout << "witness (" << verdict.witness->steps.size() << " steps):\n";
		for (const auto& s : report["witness"]) {
			std::cout << "  " << s["kind"].get<std::string>();
			if (s.contains("transition")) std::cout << ' ' << s["transition"].get<std::string>();
			if (s.contains("split")) std::cout << " split " << s["split"].get<std::size_t>();
			std::cout << "  cost " << s["cost"].get<Cost>() << "  -> " << s["region"].get<std::string>() << '\n';
		}
		std::cout << "replay at delta=" << to_string(delta) << ": cost " << to_string(replay->total_cost) << " (bound "
		          << to_string(replay->bound) << ")\n";
		std::cout << write_trace(net, replay->computation);
	}
	return verdict_exit(verdict.kind);
}

int cmd_optimize(const Options& o) {
	Net net = load_net(o.net_path);
	auto from = place_of(net, o.from, "--from"), to = place_of(net, o.to, "--to");
	OptResult r;
	try {
		r = cost_optimal(net, from, to, solver_options(o), o.max_threshold);
	} catch (const ResourceLimit& e) {
		std::cerr << e.what() << '\n';
		return kUnknown;
	}
	if (o.json) {
		std::cout << optimum_report(net, r).dump(2) << '\n';
	} else {
		switch (r.kind) {
		case OptResult::Kind::Infinite: std::cout << "unreachable (∞)\n"; break;
		case OptResult::Kind::Value:
			std::cout << "optimal = " << r.value << (r.exactness == OptResult::Exactness::Exact ? " (exact)\n" : " (upper bound)\n");
			break;
		case OptResult::Kind::Unresolved: std::cout << "unresolved up to threshold " << o.max_threshold << '\n'; break;
		}
	}
	bool definite = r.kind == OptResult::Kind::Infinite ||
	                (r.kind == OptResult::Kind::Value && r.exactness == OptResult::Exactness::Exact);
	return definite ? 0 : kUnknown;
}

} // namespace

int main(int argc, char** argv) {
	Options o;
	CLI::App app{"Priced timed Petri net toolkit"};
	app.require_subcommand(1);
	app.fallthrough();
	app.set_config("--config", "", "key=value configuration file; flags override it");
	app.add_flag("--json", o.json, "Machine-readable output");
	app.add_option("--delta", o.delta_text, "Rational delta in (0, 1/5)");
	app.add_option("--max-depth", o.bounds.max_depth, "Backward search depth bound")->check(CLI::PositiveNumber);
	app.add_option("--max-tokens", o.bounds.max_tokens, "Token bound per configuration")->check(CLI::PositiveNumber);
	app.add_option("--max-configs", o.bounds.max_configs, "Configuration cap")->check(CLI::PositiveNumber);
	app.add_option("--pad", o.pad, "Padding bound: count or cost");

	auto* validate = app.add_subcommand("validate", "Parse a net and print its canonical form");
	validate->add_option("net", o.net_path)->required();

	auto* simulate = app.add_subcommand("simulate", "Replay a JSONL computation trace");
	simulate->add_option("net", o.net_path)->required();
	simulate->add_option("trace", o.trace_path)->required();
	simulate->add_option("--initial", o.initial, "Initial marking literal, overrides the trace");

	auto* abs = app.add_subcommand("abstract", "Print the region of a delta-form marking");
	abs->add_option("net", o.net_path)->required();
	abs->add_option("marking", o.marking)->required();

	auto* check = app.add_subcommand("check", "Decide the cost-threshold problem");
	check->add_option("net", o.net_path)->required();
	check->add_option("--from", o.from)->required();
	check->add_option("--to", o.to)->required();
	check->add_option("--threshold", o.threshold)->required();

	auto* optimize = app.add_subcommand("optimize", "Compute the optimal cost");
	optimize->add_option("net", o.net_path)->required();
	optimize->add_option("--from", o.from)->required();
	optimize->add_option("--to", o.to)->required();
	optimize->add_option("--max-threshold", o.max_threshold, "Largest threshold tried");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : kUsage;
	}

	try {
		if (*validate) return cmd_validate(o);
		if (*simulate) return cmd_simulate(o);
		if (*abs) return cmd_abstract(o);
		if (*check) return cmd_check(o);
		if (*optimize) return cmd_optimize(o);
	} catch (const UsageError& e) {
		std::cerr << "usage: " << e.what() << '\n';
		return kUsage;
	} catch (const InputError& e) {
		std::cerr << e.what() << '\n';
		return kParse;
	}
	return kUsage;
}
