#include "coexsim/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace coexsim {

using nlohmann::json;

namespace {

// Continued fraction for the regularized incomplete beta (Lentz form).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

// P(T <= t) for Student-t with df degrees of freedom, t >= 0.
double t_cdf(double t, double df) {
    const double x = df / (df + t * t);
    return 1.0 - 0.5 * reg_inc_beta(df / 2.0, 0.5, x);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// RFC 4180 quoting for free-form fields (scenario names, axis labels).
std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

const char* tech_label(bool synchronous) { return synchronous ? "laa_nru" : "wifi"; }

struct SummaryColumn {
    std::vector<double> o, s_cot, s_eff, c, b;
};

json tech_to_json(const TechMetrics& t) {
    json j;
    j["o"] = t.occupancy;
    j["s_cot"] = t.s_cot;
    j["s_eff"] = t.s_eff;
    j["c"] = t.collision_prob ? json(*t.collision_prob) : json(nullptr);
    j["attempts"] = t.attempts;
    j["successes"] = t.successes;
    j["collisions"] = t.collisions;
    j["b_mbps"] = t.throughput_mbps ? json(*t.throughput_mbps) : json(nullptr);
    return j;
}

TechMetrics tech_from_json(const json& j) {
    TechMetrics t;
    t.occupancy = j.at("o").get<double>();
    t.s_cot = j.at("s_cot").get<double>();
    t.s_eff = j.at("s_eff").get<double>();
    if (!j.at("c").is_null()) t.collision_prob = j.at("c").get<double>();
    t.attempts = j.at("attempts").get<std::int64_t>();
    t.successes = j.at("successes").get<std::int64_t>();
    t.collisions = j.at("collisions").get<std::int64_t>();
    if (!j.at("b_mbps").is_null()) t.throughput_mbps = j.at("b_mbps").get<double>();
    return t;
}

}  // namespace

double student_t_975(int df) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
    // Monotone CDF: bisect to ~1e-12. The quantile is below 13 for df = 1.
    double lo = 0.0;
    double hi = 16.0;
    const double nu = df;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf(mid, nu) < 0.975) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

MeanCi mean_ci95(std::span<const double> samples) {
    MeanCi out;
    out.n = static_cast<int>(samples.size());
    if (samples.empty()) return out;
    double sum = 0;
    for (double v : samples) sum += v;
    out.mean = sum / out.n;
    if (out.n < 2) return out;
    double ss = 0;
    for (double v : samples) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / (out.n - 1));
    out.half_width = student_t_975(out.n - 1) * sd / std::sqrt(static_cast<double>(out.n));
    return out;
}

std::string csv_header() {
    return "schema,scenario,axis,axis_value,record,seed,node_id,technology,kind,"
           "attempts,successes,collisions,occupancy_ns,success_occupancy_ns,effective_ns,"
           "elapsed_ns,rounds,o,s_cot,s_eff,c,b_mbps,o_ci95,s_cot_ci95,s_eff_ci95,c_ci95,b_ci95";
}

void write_csv_header(std::ostream& out) { out << csv_header() << "\n"; }

namespace {

void push_tech_sample(SummaryColumn& col, const TechMetrics& t) {
    col.o.push_back(t.occupancy);
    col.s_cot.push_back(t.s_cot);
    col.s_eff.push_back(t.s_eff);
    if (t.collision_prob) col.c.push_back(*t.collision_prob);
    if (t.throughput_mbps) col.b.push_back(*t.throughput_mbps);
}

void write_rows(std::ostream& out, const ScenarioResult& result, const std::string& axis,
                const std::string& axis_value) {
    const std::string prefix_base = std::string(kResultSchema) + "," +
                                    csv_field(result.spec.name) + "," + csv_field(axis) + "," +
                                    csv_field(axis_value) + ",";
    SummaryColumn summary[3];  // wifi, laa_nru, all

    for (const SeedResult& run : result.seeds) {
        const std::string seed = std::to_string(run.seed);
        for (std::size_t i = 0; i < result.nodes.size(); ++i) {
            const NodeConfig& node = result.nodes[i];
            const NodeStats& s = run.stats.nodes[i];
            const NodeMetrics& m = run.metrics.nodes[i];
            out << prefix_base << "node," << seed << "," << node.id << ","
                << tech_label(is_synchronous(node.kind)) << "," << to_string(node.kind) << ","
                << s.attempts << "," << s.successes << "," << s.collisions << "," << s.occupancy
                << "," << s.success_occupancy << "," << s.effective << ","
                << run.stats.total_elapsed << "," << run.stats.rounds << "," << fmt(m.occupancy)
                << "," << fmt(m.s_cot) << "," << fmt(m.s_eff) << "," << fmt(m.collision_prob)
                << ",,,,,,\n";
        }
        const TechMetrics* techs[3] = {&run.metrics.wifi, &run.metrics.laa_nru,
                                       &run.metrics.total};
        const char* labels[3] = {"wifi", "laa_nru", "all"};
        for (int t = 0; t < 3; ++t) {
            const TechMetrics& tech = *techs[t];
            push_tech_sample(summary[t], tech);
            Nanos occ = 0, socc = 0, eff = 0;
            for (std::size_t i = 0; i < result.nodes.size(); ++i) {
                const bool sync = is_synchronous(result.nodes[i].kind);
                if (t == 0 && sync) continue;
                if (t == 1 && !sync) continue;
                occ += run.stats.nodes[i].occupancy;
                socc += run.stats.nodes[i].success_occupancy;
                eff += run.stats.nodes[i].effective;
            }
            out << prefix_base << "tech," << seed << ",," << labels[t] << ",," << tech.attempts
                << "," << tech.successes << "," << tech.collisions << "," << occ << "," << socc
                << "," << eff << "," << run.stats.total_elapsed << "," << run.stats.rounds << ","
                << fmt(tech.occupancy) << "," << fmt(tech.s_cot) << "," << fmt(tech.s_eff) << ","
                << fmt(tech.collision_prob) << "," << fmt(tech.throughput_mbps) << ",,,,,\n";
        }
    }

    const char* labels[3] = {"wifi", "laa_nru", "all"};
    for (int t = 0; t < 3; ++t) {
        const SummaryColumn& col = summary[t];
        const MeanCi o = mean_ci95(col.o);
        const MeanCi cot = mean_ci95(col.s_cot);
        const MeanCi eff = mean_ci95(col.s_eff);
        const MeanCi c = mean_ci95(col.c);
        const MeanCi b = mean_ci95(col.b);
        out << prefix_base << "summary,,," << labels[t] << ",,,,,,,,,," << fmt(o.mean) << ","
            << fmt(cot.mean) << "," << fmt(eff.mean) << ","
            << (c.n > 0 ? fmt(c.mean) : std::string()) << ","
            << (b.n > 0 ? fmt(b.mean) : std::string()) << "," << fmt(o.half_width) << ","
            << fmt(cot.half_width) << "," << fmt(eff.half_width) << ","
            << (c.n > 0 ? fmt(c.half_width) : std::string()) << ","
            << (b.n > 0 ? fmt(b.half_width) : std::string()) << "\n";
    }
}

json result_to_json(const ScenarioResult& result, const std::string& axis,
                    const std::string& axis_value) {
    json doc;
    doc["schema"] = kResultSchema;
    doc["scenario"] = result.spec.name;
    doc["axis"] = axis;
    doc["axis_value"] = axis_value;

    json runs = json::array();
    SummaryColumn summary[3];
    for (const SeedResult& run : result.seeds) {
        json r;
        r["seed"] = run.seed;
        r["rounds"] = run.stats.rounds;
        r["elapsed_ns"] = run.stats.total_elapsed;
        r["collision_rounds"] = run.stats.collision_rounds;
        json nodes = json::array();
        for (std::size_t i = 0; i < result.nodes.size(); ++i) {
            const NodeConfig& node = result.nodes[i];
            const NodeStats& s = run.stats.nodes[i];
            const NodeMetrics& m = run.metrics.nodes[i];
            json n;
            n["id"] = node.id;
            n["technology"] = tech_label(is_synchronous(node.kind));
            n["kind"] = to_string(node.kind);
            n["attempts"] = s.attempts;
            n["successes"] = s.successes;
            n["collisions"] = s.collisions;
            n["occupancy_ns"] = s.occupancy;
            n["success_occupancy_ns"] = s.success_occupancy;
            n["effective_ns"] = s.effective;
            n["o"] = m.occupancy;
            n["s_cot"] = m.s_cot;
            n["s_eff"] = m.s_eff;
            n["c"] = m.collision_prob ? json(*m.collision_prob) : json(nullptr);
            nodes.push_back(std::move(n));
        }
        r["nodes"] = std::move(nodes);
        r["tech"] = {{"wifi", tech_to_json(run.metrics.wifi)},
                     {"laa_nru", tech_to_json(run.metrics.laa_nru)},
                     {"all", tech_to_json(run.metrics.total)}};
        runs.push_back(std::move(r));
        push_tech_sample(summary[0], run.metrics.wifi);
        push_tech_sample(summary[1], run.metrics.laa_nru);
        push_tech_sample(summary[2], run.metrics.total);
    }
    doc["runs"] = std::move(runs);

    const char* labels[3] = {"wifi", "laa_nru", "all"};
    json sum;
    for (int t = 0; t < 3; ++t) {
        const SummaryColumn& col = summary[t];
        json block;
        auto put = [&](const char* key, const MeanCi& v, bool defined) {
            block[key] = defined ? json{{"mean", v.mean}, {"ci95", v.half_width}, {"n", v.n}}
                                 : json(nullptr);
        };
        put("o", mean_ci95(col.o), !col.o.empty());
        put("s_cot", mean_ci95(col.s_cot), !col.s_cot.empty());
        put("s_eff", mean_ci95(col.s_eff), !col.s_eff.empty());
        put("c", mean_ci95(col.c), !col.c.empty());
        put("b_mbps", mean_ci95(col.b), !col.b.empty());
        sum[labels[t]] = std::move(block);
    }
    doc["summary"] = std::move(sum);
    return doc;
}

}  // namespace

void write_csv(std::ostream& out, const ScenarioResult& result, const std::string& axis,
               const std::string& axis_value) {
    write_csv_header(out);
    write_rows(out, result, axis, axis_value);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPointResult>& points,
                     const std::string& axis) {
    write_csv_header(out);
    for (const SweepPointResult& p : points) write_rows(out, p.result, axis, p.axis_value);
}

void write_json(std::ostream& out, const ScenarioResult& result, const std::string& axis,
                const std::string& axis_value) {
    out << result_to_json(result, axis, axis_value).dump(2) << "\n";
}

void write_sweep_json(std::ostream& out, const std::vector<SweepPointResult>& points,
                      const std::string& axis) {
    json doc;
    doc["schema"] = kResultSchema;
    doc["axis"] = axis;
    json arr = json::array();
    for (const SweepPointResult& p : points) {
        arr.push_back(result_to_json(p.result, axis, p.axis_value));
    }
    doc["points"] = std::move(arr);
    out << doc.dump(2) << "\n";
}

ParsedRun parse_results_json(const std::string& text) {
    const json doc = json::parse(text);
    ParsedRun out;
    out.schema = doc.at("schema").get<std::string>();
    if (out.schema != kResultSchema)
        throw std::runtime_error("unsupported results schema: " + out.schema);
    out.scenario = doc.at("scenario").get<std::string>();
    out.axis = doc.at("axis").get<std::string>();
    out.axis_value = doc.at("axis_value").get<std::string>();
    for (const json& r : doc.at("runs")) {
        SeedResult run;
        run.seed = r.at("seed").get<std::uint64_t>();
        run.stats.rounds = r.at("rounds").get<std::int64_t>();
        run.stats.total_elapsed = r.at("elapsed_ns").get<Nanos>();
        run.stats.collision_rounds = r.at("collision_rounds").get<std::int64_t>();
        for (const json& n : r.at("nodes")) {
            NodeStats s;
            s.attempts = n.at("attempts").get<std::int64_t>();
            s.successes = n.at("successes").get<std::int64_t>();
            s.collisions = n.at("collisions").get<std::int64_t>();
            s.occupancy = n.at("occupancy_ns").get<Nanos>();
            s.success_occupancy = n.at("success_occupancy_ns").get<Nanos>();
            s.effective = n.at("effective_ns").get<Nanos>();
            run.stats.nodes.push_back(s);
            NodeMetrics m;
            m.occupancy = n.at("o").get<double>();
            m.s_cot = n.at("s_cot").get<double>();
            m.s_eff = n.at("s_eff").get<double>();
            if (!n.at("c").is_null()) m.collision_prob = n.at("c").get<double>();
            run.metrics.nodes.push_back(m);
        }
        const json& tech = r.at("tech");
        run.metrics.wifi = tech_from_json(tech.at("wifi"));
        run.metrics.laa_nru = tech_from_json(tech.at("laa_nru"));
        run.metrics.total = tech_from_json(tech.at("all"));
        out.seeds.push_back(std::move(run));
    }
    return out;
}

void write_trace_header(std::ostream& out) {
    out << "schema,scenario,seed,round,t_ns,delta_ns,winners,kind\n";
}

void write_trace_row(std::ostream& out, const std::string& scenario, std::uint64_t seed,
                     const RoundOutcome& outcome) {
    out << kTraceSchema << "," << csv_field(scenario) << "," << seed << "," << outcome.round << ","
        << outcome.t_after << "," << outcome.delay << ",";
    for (std::size_t i = 0; i < outcome.winners.size(); ++i) {
        if (i > 0) out << ';';
        out << outcome.winners[i];
    }
    out << "," << (outcome.success ? "success" : "collision") << "\n";
}

}  // namespace coexsim
