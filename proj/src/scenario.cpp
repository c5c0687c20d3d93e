#include "coexsim/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "coexsim/validate.hpp"

namespace coexsim {

using nlohmann::json;

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Count: return "count";
        case SweepAxis::Delta: return "delta_us";
        case SweepAxis::Mode: return "mode";
        case SweepAxis::DataDuration: return "data_us";
    }
    return "?";
}

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& message) { throw std::runtime_error(message); }

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            fail(where + ": unknown field '" + key + "'");
        }
    }
}

Nanos read_us(const json& obj, const char* key, Nanos fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer())
        fail(std::string(key) + " must be an integer number of microseconds");
    return obj[key].get<std::int64_t>() * 1000;
}

TechnologyKind parse_kind(const std::string& raw) {
    const std::string s = to_lower(raw);
    if (s == "wifi") return TechnologyKind::RandomAccess;
    if (s == "laa_rs") return TechnologyKind::SyncRs;
    if (s == "nru_gap") return TechnologyKind::SyncGap;
    fail("unknown node kind '" + raw + "' (expected wifi, laa_rs or nru_gap)");
}

RegSpec parse_reg_spec(const std::string& raw) {
    const std::string s = to_lower(raw);
    if (s == "etsi") return RegSpec::Etsi;
    if (s == "3gpp") return RegSpec::ThreeGpp;
    if (s == "ieee80211") return RegSpec::Ieee80211;
    fail("unknown spec '" + raw + "' (expected etsi, 3gpp or ieee80211)");
}

int parse_priority(const json& value, RegSpec spec) {
    if (value.is_number_integer()) return value.get<int>();
    if (value.is_string() && spec == RegSpec::Ieee80211) {
        const std::string s = to_lower(value.get<std::string>());
        if (s == "ac_vo") return 1;
        if (s == "ac_vi") return 2;
        if (s == "ac_be") return 3;
        if (s == "ac_bk") return 4;
        fail("unknown access category '" + value.get<std::string>() + "'");
    }
    fail("priority must be an integer class id (or an AC name for ieee80211)");
}

GroupSpec parse_group(const json& g) {
    require_keys(g, "group",
                 {"count", "kind", "spec", "priority", "delta_us", "data_us", "ack_us"});
    if (!g.contains("kind")) fail("group: missing 'kind'");
    GroupSpec group;
    group.kind = parse_kind(g["kind"].get<std::string>());
    group.count = g.value("count", 1);

    const bool sync = is_synchronous(group.kind);
    group.spec = sync ? RegSpec::ThreeGpp : RegSpec::Ieee80211;
    if (g.contains("spec")) group.spec = parse_reg_spec(g["spec"].get<std::string>());
    group.priority = 3;  // AC_BE / priority class 3 defaults
    if (g.contains("priority")) group.priority = parse_priority(g["priority"], group.spec);

    group.delta = sync ? read_us(g, "delta_us", 1000_us) : read_us(g, "delta_us", 0);
    group.data_duration = read_us(g, "data_us", sync ? 6000_us : 2100_us);
    group.ack_duration = sync ? read_us(g, "ack_us", 0) : read_us(g, "ack_us", 50_us);
    return group;
}

SweepAxis parse_axis(const std::string& raw) {
    const std::string s = to_lower(raw);
    if (s == "count") return SweepAxis::Count;
    if (s == "delta_us") return SweepAxis::Delta;
    if (s == "mode") return SweepAxis::Mode;
    if (s == "data_us") return SweepAxis::DataDuration;
    fail("unknown sweep axis '" + raw + "' (expected count, delta_us, mode or data_us)");
}

ScenarioSpec parse_scenario_json(const json& doc) {
    if (!doc.is_object()) fail("scenario file must contain a JSON object");
    require_keys(doc, "scenario",
                 {"version", "name", "rounds", "seeds", "sync_mode", "wifi_ppdu_max_override",
                  "sim", "rates_mbps", "groups", "sweep"});
    if (!doc.contains("version")) fail("scenario: missing 'version'");
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
        fail("scenario: unsupported version (expected 1)");

    ScenarioSpec spec;
    spec.name = doc.value("name", std::string("scenario"));
    spec.rounds = doc.value("rounds", std::int64_t{100000});

    if (!doc.contains("seeds") || !doc["seeds"].is_array() || doc["seeds"].empty())
        fail("scenario: 'seeds' must be a non-empty array");
    for (const json& s : doc["seeds"]) {
        if (!s.is_number_integer()) fail("scenario: seeds must be integers");
        spec.seeds.push_back(s.get<std::uint64_t>());
    }

    if (doc.contains("sync_mode")) {
        const std::string mode = to_lower(doc["sync_mode"].get<std::string>());
        if (mode == "synchronized") spec.sync_mode = SyncMode::Synchronized;
        else if (mode == "desynchronized") spec.sync_mode = SyncMode::Desynchronized;
        else fail("scenario: sync_mode must be synchronized or desynchronized");
    }
    spec.wifi_ppdu_max_override = doc.value("wifi_ppdu_max_override", false);

    if (doc.contains("sim")) {
        const json& sim = doc["sim"];
        require_keys(sim, "sim", {"slot_us", "sifs_us", "cs_us"});
        spec.sim.slot_sigma = read_us(sim, "slot_us", spec.sim.slot_sigma);
        spec.sim.sifs = read_us(sim, "sifs_us", spec.sim.sifs);
        spec.sim.sensing_cs = read_us(sim, "cs_us", spec.sim.sensing_cs);
    }
    if (doc.contains("rates_mbps")) {
        const json& rates = doc["rates_mbps"];
        require_keys(rates, "rates_mbps", {"wifi", "laa_nru"});
        Rates r;
        r.wifi_mbps = rates.value("wifi", 0.0);
        r.laa_nru_mbps = rates.value("laa_nru", 0.0);
        spec.rates = r;
    }

    if (!doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty())
        fail("scenario: 'groups' must be a non-empty array");
    for (const json& g : doc["groups"]) spec.groups.push_back(parse_group(g));
    return spec;
}

json parse_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("scenario parse error: ") + e.what());
    }
    return doc;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void throw_if_invalid(const ScenarioSpec& spec) {
    const std::vector<std::string> errors = validate_scenario(spec);
    if (errors.empty()) return;
    std::ostringstream os;
    os << "invalid scenario";
    for (const std::string& e : errors) os << "\n  - " << e;
    throw std::runtime_error(os.str());
}

}  // namespace

std::vector<NodeConfig> expand_nodes(const ScenarioSpec& spec) {
    std::vector<NodeConfig> nodes;
    for (const GroupSpec& group : spec.groups) {
        const Ieee80211OmaxMode omax_mode = spec.wifi_ppdu_max_override
                                                ? Ieee80211OmaxMode::PpduMaxTime
                                                : Ieee80211OmaxMode::TxopLimit;
        const PriorityClassParams cls =
            lookup_priority_class(group.spec, group.priority, Direction::Downlink, omax_mode);
        for (int i = 0; i < group.count; ++i) {
            NodeConfig node;
            node.id = static_cast<int>(nodes.size());
            node.kind = group.kind;
            node.cls = cls;
            node.delta = is_synchronous(group.kind) ? group.delta : 0;
            node.phase = 0;
            node.data_duration = group.data_duration;
            node.ack_duration = group.kind == TechnologyKind::RandomAccess ? group.ack_duration : 0;
            nodes.push_back(node);
        }
    }
    return nodes;
}

std::vector<std::string> validate_scenario(const ScenarioSpec& spec) {
    std::vector<std::string> errors;
    if (spec.rounds < 1) errors.push_back("rounds must be >= 1");
    if (spec.seeds.empty()) errors.push_back("at least one seed is required");
    if (spec.groups.empty()) errors.push_back("at least one node group is required");
    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
        if (spec.groups[i].count < 1) {
            errors.push_back("group " + std::to_string(i) + ": count must be >= 1");
        }
    }
    if (spec.rates && (spec.rates->wifi_mbps < 0 || spec.rates->laa_nru_mbps < 0))
        errors.push_back("throughput rates must be >= 0");
    if (!errors.empty()) return errors;

    std::vector<NodeConfig> nodes;
    try {
        nodes = expand_nodes(spec);
    } catch (const std::exception& e) {
        errors.push_back(e.what());
        return errors;
    }
    for (std::string& e : validate_nodes(spec.sim, nodes)) errors.push_back(std::move(e));
    return errors;
}

ScenarioSpec parse_scenario(const std::string& text) {
    const ScenarioSpec spec = parse_scenario_json(parse_text(text));
    throw_if_invalid(spec);
    return spec;
}

ScenarioSpec parse_scenario_file(const std::string& path) { return parse_scenario(slurp(path)); }

SweepSpec parse_sweep_file(const std::string& path) {
    const json doc = parse_text(slurp(path));
    SweepSpec sweep;
    sweep.base = parse_scenario_json(doc);
    throw_if_invalid(sweep.base);
    if (!doc.contains("sweep")) fail("sweep file needs a 'sweep' block");
    const json& s = doc["sweep"];
    require_keys(s, "sweep", {"axis", "values"});
    if (!s.contains("axis") || !s["axis"].is_string()) fail("sweep: missing 'axis'");
    sweep.axis = parse_axis(s["axis"].get<std::string>());
    if (!s.contains("values") || !s["values"].is_array() || s["values"].empty())
        fail("sweep: 'values' must be a non-empty array");
    for (const json& v : s["values"]) {
        if (v.is_string()) sweep.values.push_back(v.get<std::string>());
        else if (v.is_number_integer()) sweep.values.push_back(std::to_string(v.get<std::int64_t>()));
        else fail("sweep: values must be integers or strings");
    }
    // Every expanded point has to stand on its own.
    for (const std::string& v : sweep.values) {
        const ScenarioSpec point = apply_axis(sweep.base, sweep.axis, v);
        const std::vector<std::string> errors = validate_scenario(point);
        if (!errors.empty()) fail("sweep point '" + v + "': " + errors.front());
    }
    return sweep;
}

ScenarioSpec apply_axis(const ScenarioSpec& base, SweepAxis axis, const std::string& value) {
    ScenarioSpec spec = base;
    switch (axis) {
        case SweepAxis::Count: {
            const int count = std::stoi(value);
            for (GroupSpec& g : spec.groups) g.count = count;
            break;
        }
        case SweepAxis::Delta: {
            const Nanos delta = static_cast<Nanos>(std::stoll(value)) * 1000;
            for (GroupSpec& g : spec.groups)
                if (is_synchronous(g.kind)) g.delta = delta;
            break;
        }
        case SweepAxis::Mode: {
            const std::string mode = to_lower(value);
            if (mode == "synchronized") spec.sync_mode = SyncMode::Synchronized;
            else if (mode == "desynchronized") spec.sync_mode = SyncMode::Desynchronized;
            else fail("sweep: mode value must be synchronized or desynchronized");
            break;
        }
        case SweepAxis::DataDuration: {
            const Nanos data = static_cast<Nanos>(std::stoll(value)) * 1000;
            for (GroupSpec& g : spec.groups)
                if (is_synchronous(g.kind)) g.data_duration = data;
            break;
        }
    }
    spec.name = base.name + "@" + to_string(axis) + "=" + value;
    return spec;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, int jobs,
                            const std::function<void(std::uint64_t, const Simulation&,
                                                     const RoundOutcome&)>* observer) {
    throw_if_invalid(spec);
    ScenarioResult result;
    result.spec = spec;
    result.nodes = expand_nodes(spec);
    result.seeds.resize(spec.seeds.size());

    auto run_one = [&](std::size_t index) {
        const std::uint64_t seed = spec.seeds[index];
        RunConfig config{spec.rounds, seed, spec.sync_mode};
        SeedResult& out = result.seeds[index];
        out.seed = seed;
        if (observer && *observer) {
            RoundObserver wrapped = [&](const Simulation& sim, const RoundOutcome& o) {
                (*observer)(seed, sim, o);
            };
            out.stats = run_single(spec.sim, result.nodes, config, &wrapped);
        } else {
            out.stats = run_single(spec.sim, result.nodes, config, nullptr);
        }
        out.metrics = compute_report(out.stats, result.nodes, spec.rates);
    };

    const bool serial = jobs <= 1 || (observer && *observer);
    if (serial) {
        for (std::size_t i = 0; i < result.seeds.size(); ++i) run_one(i);
        return result;
    }
    // Seeds are independent; each task writes only its own slot, so the
    // outcome cannot depend on scheduling.
    std::size_t next = 0;
    while (next < result.seeds.size()) {
        const std::size_t batch =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), result.seeds.size() - next);
        std::vector<std::future<void>> tasks;
        tasks.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            tasks.push_back(std::async(std::launch::async, run_one, next + i));
        }
        for (std::future<void>& t : tasks) t.get();
        next += batch;
    }
    return result;
}

std::vector<SweepPointResult> run_sweep(const SweepSpec& sweep, int jobs) {
    std::vector<SweepPointResult> points;
    points.reserve(sweep.values.size());
    for (const std::string& value : sweep.values) {
        SweepPointResult point;
        point.axis_value = value;
        point.result = run_scenario(apply_axis(sweep.base, sweep.axis, value), jobs);
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace coexsim
