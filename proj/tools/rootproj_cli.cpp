// Command-line front end: construct systems, project them, analyze the
// projected sets, and run the sweep/verify/table reports. Output is
// byte-deterministic for a fixed invocation regardless of worker count.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rootproj/angle.hpp"
#include "rootproj/theorems.hpp"

using json = nlohmann::ordered_json;
using namespace rootproj;

namespace {

json jvec(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// A report is a header plus rows; each format renders the same cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        for (size_t i = 0; i < t.header.size(); ++i)
            os << (i ? "," : "") << csv_escape(t.header[i]);
        os << "\n";
        for (const auto& row : t.rows) {
            for (size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_escape(row[i]);
            os << "\n";
        }
    } else {  // markdown
        os << "|";
        for (const auto& h : t.header) os << " " << h << " |";
        os << "\n|";
        for (size_t i = 0; i < t.header.size(); ++i) os << " --- |";
        os << "\n";
        for (const auto& row : t.rows) {
            os << "|";
            for (const auto& c : row) os << " " << c << " |";
            os << "\n";
        }
    }
    return os.str();
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

std::vector<int> parse_theta(const std::string& s, int rank) {
    std::vector<int> theta;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("malformed theta list: " + s);
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("malformed theta list: " + s);
        if (v < 1 || v > rank)
            throw std::invalid_argument("theta index " + tok + " outside 1.." +
                                        std::to_string(rank));
        theta.push_back(v - 1);
    }
    if (theta.empty()) throw std::invalid_argument("empty theta list");
    std::sort(theta.begin(), theta.end());
    theta.erase(std::unique(theta.begin(), theta.end()), theta.end());
    return theta;
}

json theta_json(const std::vector<int>& theta) {
    json a = json::array();
    for (int i : theta) a.push_back(i + 1);  // 1-based in all reports
    return a;
}

SystemLabel label_of(const std::string& type, const std::string& convention) {
    Convention conv = convention == "bourbaki" ? Convention::bourbaki
                                               : Convention::labesse;
    if (convention != "labesse" && convention != "bourbaki")
        throw std::invalid_argument("unknown convention: " + convention);
    return parse_label(type, conv);
}

/// Reads a `construct` JSON back as a system definition: rebuild from the
/// label and check the file's roots match exactly.
RootSystemData system_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read system file: " + path);
    json j = json::parse(f);
    auto sys = build(label_of(j.at("label"), j.value("convention", "labesse")));
    std::set<Vec> expect;
    for (const auto& jr : j.at("roots")) {
        Vec v;
        for (const auto& x : jr) v.push_back(Rational::parse(x.get<std::string>()));
        expect.insert(std::move(v));
    }
    if (expect != std::set<Vec>(sys.roots.begin(), sys.roots.end()))
        throw std::invalid_argument("system file roots do not match label " +
                                    sys.label.str());
    return sys;
}

std::string rational_or(const std::optional<Rational>& x, const std::string& alt) {
    return x ? x->str() : alt;
}

int run_construct(const SystemLabel& label, const std::string& format,
                  const std::string& out) {
    auto sys = build(label);
    if (format == "json") {
        json j;
        j["label"] = label.str();
        j["convention"] = label.convention == Convention::bourbaki ? "bourbaki"
                                                                   : "labesse";
        j["ambient_dim"] = sys.simple.empty() ? 0 : sys.simple[0].size();
        j["simple"] = json::array();
        for (const auto& v : sys.simple) j["simple"].push_back(jvec(v));
        j["roots"] = json::array();
        for (const auto& v : sys.roots) j["roots"].push_back(jvec(v));
        write_out(j.dump(2) + "\n", out);
        return 0;
    }
    Table t{{"kind", "vector", "squared length"}, {}};
    for (const auto& v : sys.simple) t.rows.push_back({"simple", vec_str(v), norm_sq(v).str()});
    for (const auto& v : sys.roots) t.rows.push_back({"root", vec_str(v), norm_sq(v).str()});
    write_out(render(t, format), out);
    return 0;
}

int run_project(const RootSystemData& sys, const std::vector<int>& theta,
                const std::string& format, const std::string& out) {
    auto ps = project_system(sys, theta);
    std::vector<Vec> reps;
    for (const auto& v : ps.sigma_theta)
        if (canonical_sign(v) == v) reps.push_back(v);
    if (format == "json") {
        json j;
        j["label"] = sys.label.str();
        j["theta"] = theta_json(ps.theta);
        j["d"] = ps.d;
        j["delta_theta"] = json::array();
        for (const auto& v : ps.delta_theta) j["delta_theta"].push_back(jvec(v));
        j["sigma_theta"] = json::array();
        for (const auto& v : reps) j["sigma_theta"].push_back(jvec(v));
        j["sigma_size"] = ps.sigma_theta.size();
        j["fiber_sizes"] = json::array();
        for (const auto& v : reps)
            j["fiber_sizes"].push_back(
                {{"vector", jvec(v)}, {"size", ps.fibers.at(v).size()}});
        write_out(j.dump(2) + "\n", out);
        return 0;
    }
    Table t{{"representative", "squared length", "fiber size"}, {}};
    for (const auto& v : reps)
        t.rows.push_back({vec_str(v), norm_sq(v).str(),
                          std::to_string(ps.fibers.at(v).size())});
    write_out(render(t, format), out);
    return 0;
}

int run_analyze(const RootSystemData& sys, const std::vector<int>& theta,
                bool pairs, bool max_rank, unsigned workers,
                const std::string& format, const std::string& out) {
    if (!pairs && !max_rank) pairs = max_rank = true;
    auto ps = project_system(sys, theta);
    json j;
    j["label"] = sys.label.str();
    j["theta"] = theta_json(ps.theta);
    j["d"] = ps.d;
    std::string text;
    if (pairs) {
        auto screen = incompatibility_screen(ps);
        if (format == "json") {
            j["pairs"] = json::array();
            for (const auto& e : screen.pairs)
                j["pairs"].push_back({{"a", jvec(e.a)},
                                      {"b", jvec(e.b)},
                                      {"inner", inner(e.a, e.b).str()},
                                      {"norm_a", norm_sq(e.a).str()},
                                      {"norm_b", norm_sq(e.b).str()},
                                      {"c", rational_or(e.data.c, "orthogonal")},
                                      {"r", e.data.r.str()},
                                      {"verdict", verdict_str(e.data.verdict)}});
            j["admits"] = {{"A2", screen.admits_a2},
                           {"B2", screen.admits_b2},
                           {"G2", screen.admits_g2}};
        } else {
            Table t{{"a", "b", "<a,b>", "|a|^2", "|b|^2", "C", "R", "verdict"}, {}};
            for (const auto& e : screen.pairs)
                t.rows.push_back({vec_str(e.a), vec_str(e.b), inner(e.a, e.b).str(),
                                  norm_sq(e.a).str(), norm_sq(e.b).str(),
                                  rational_or(e.data.c, "orthogonal"),
                                  e.data.r.str(), verdict_str(e.data.verdict)});
            text += render(t, format);
        }
    }
    if (max_rank) {
        auto reports = max_rank_subsystems(ps, ps.d, workers);
        if (format == "json") {
            j["max_rank_subsystems"] = json::array();
            for (const auto& rep : reports) {
                json c = json::array();
                for (const auto& [t, r] : rep.components) c.push_back({t, r});
                json ss = json::array();
                for (const auto& v : rep.simple_system) ss.push_back(jvec(v));
                j["max_rank_subsystems"].push_back({{"rank", rep.rank},
                                                    {"components", c},
                                                    {"reduced", rep.reduced},
                                                    {"root_count", rep.roots.size()},
                                                    {"achieves_d", rep.achieves_d},
                                                    {"simple_system", ss}});
            }
        } else {
            Table t{{"components", "rank", "roots", "reduced", "achieves d",
                     "simple system"}, {}};
            for (const auto& rep : reports) {
                std::string comps, ss;
                for (const auto& [ty, r] : rep.components) {
                    if (!comps.empty()) comps += " + ";
                    comps += ty + std::to_string(r);
                }
                for (const auto& v : rep.simple_system) {
                    if (!ss.empty()) ss += " ";
                    ss += vec_str(v);
                }
                t.rows.push_back({comps, std::to_string(rep.rank),
                                  std::to_string(rep.roots.size()),
                                  rep.reduced ? "yes" : "no",
                                  rep.achieves_d ? "yes" : "no", ss});
            }
            text += render(t, format);
        }
    }
    if (format == "json") text = j.dump(2) + "\n";
    write_out(text, out);
    return 0;
}

int run_sweep(const SystemLabel& label, unsigned workers, const std::string& format,
              const std::string& out) {
    if (label.family == Family::G)
        throw std::invalid_argument("rank-2 systems are excluded from sweeps");
    auto sys = build(label);
    auto thetas = detail::proper_subsets(label.rank);
    struct Row {
        std::vector<int> theta;
        size_t d = 0, sigma = 0, max_rank = 0;
        std::string types;
    };
    std::vector<Row> rows(thetas.size());
    detail::parallel_for(thetas.size(), workers, [&](size_t i) {
        auto ps = project_system(sys, thetas[i]);
        auto reports = max_rank_subsystems(ps, ps.d);
        size_t mr = 0;
        for (const auto& rep : reports) mr = std::max(mr, rep.rank);
        rows[i] = {thetas[i], ps.d, ps.sigma_theta.size(), mr,
                   detail::found_str(reports)};
    });
    if (format == "json") {
        json j;
        j["label"] = label.str();
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"theta", theta_json(r.theta)},
                                 {"d", r.d},
                                 {"sigma_size", r.sigma},
                                 {"max_rank", r.max_rank},
                                 {"types", r.types}});
        write_out(j.dump(2) + "\n", out);
        return 0;
    }
    Table t{{"theta", "d", "|sigma|", "max rank", "types"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({theta_str(r.theta), std::to_string(r.d),
                          std::to_string(r.sigma), std::to_string(r.max_rank),
                          r.types});
    write_out(render(t, format), out);
    return 0;
}

bool hard_source(const std::string& src) {
    return src.rfind("table_", 0) != 0;
}

int run_verify(int theorem, const std::string& family, int max_n,
               const std::string& system, unsigned workers,
               const std::string& format, const std::string& out) {
    std::vector<Discrepancy> ds;
    json j;
    if (theorem == 1) {
        if (family.size() != 1) throw std::invalid_argument("--family required (A/B/C/D)");
        ds = verify_classical_sweep(parse_family(family[0]), max_n, workers);
        j["mode"] = "classical";
        j["family"] = family;
        j["max_n"] = max_n;
    } else if (theorem == 2) {
        if (system.empty()) throw std::invalid_argument("--system required");
        ds = verify_exceptional(parse_label(system), workers);
        j["mode"] = "exceptional";
        j["system"] = system;
    } else {
        throw std::invalid_argument("--theorem must be 1 or 2");
    }
    size_t hard = 0;
    for (const auto& d : ds)
        if (hard_source(d.source)) ++hard;
    if (format == "json") {
        j["discrepancies"] = json::array();
        for (const auto& d : ds)
            j["discrepancies"].push_back({{"system", d.system.str()},
                                          {"theta", theta_json(d.theta)},
                                          {"expected", d.expected},
                                          {"found", d.found},
                                          {"source", d.source}});
        j["hard_failures"] = hard;
        write_out(j.dump(2) + "\n", out);
    } else {
        Table t{{"system", "theta", "source", "expected", "found"}, {}};
        for (const auto& d : ds)
            t.rows.push_back({d.system.str(), theta_str(d.theta), d.source,
                              d.expected, d.found});
        write_out(render(t, format), out);
    }
    return hard ? 1 : 0;
}

int run_table(const std::string& system, unsigned workers, const std::string& format,
              const std::string& out) {
    auto label = parse_label(system);
    if (!(label.family == Family::F ||
          (label.family == Family::E && label.rank >= 6 && label.rank <= 8)))
        throw std::invalid_argument("table expects F4, E6, E7 or E8");
    auto sys = build(label);
    const auto& rows = detail::table_rows(label.family, label.rank);
    struct Out {
        std::string lengths, cr, expected, found;
        bool match = false;
    };
    std::vector<Out> cells(rows.size());
    detail::parallel_for(rows.size(), workers, [&](size_t i) {
        auto ps = project_system(sys, rows[i].theta);
        std::string lengths;
        for (const auto& v : ps.delta_theta) {
            if (!lengths.empty()) lengths += ", ";
            lengths += norm_sq(v).str();
        }
        std::string cr;
        for (size_t a = 0; a < ps.delta_theta.size(); ++a)
            for (size_t b = a + 1; b < ps.delta_theta.size(); ++b) {
                auto d = angle_data(ps.delta_theta[a], ps.delta_theta[b]);
                if (d.verdict == AngleVerdict::orthogonal) continue;
                if (!cr.empty()) cr += "; ";
                cr += "C=" + d.c->str() + ", R=" + d.r.str();
            }
        auto reports = max_rank_subsystems(ps, ps.d, 1);
        std::string found = detail::found_str(reports);
        auto expect = detail::parse_types(rows[i].expected);
        std::set<std::string> got;
        size_t mr = 0;
        for (const auto& rep : reports) mr = std::max(mr, rep.rank);
        if (mr >= 2)
            for (const auto& rep : reports)
                for (const auto& [t, r] : rep.components) got.insert(t + std::to_string(r));
        bool match = expect.empty() ? got.empty() : true;
        for (const auto& t : expect)
            if (!got.count(t)) match = false;
        cells[i] = {lengths, cr, rows[i].expected, found, match};
    });
    if (format == "json") {
        json j;
        j["system"] = label.str();
        j["rows"] = json::array();
        for (size_t i = 0; i < rows.size(); ++i)
            j["rows"].push_back({{"theta", theta_json(rows[i].theta)},
                                 {"squared_lengths", cells[i].lengths},
                                 {"c_and_r", cells[i].cr},
                                 {"expected", cells[i].expected},
                                 {"found", cells[i].found},
                                 {"match", cells[i].match}});
        write_out(j.dump(2) + "\n", out);
        return 0;
    }
    Table t{{"theta", "squared lengths of projected roots", "C and R",
             "root system of highest rank obtained", "found", "diff"}, {}};
    for (size_t i = 0; i < rows.size(); ++i)
        t.rows.push_back({theta_str(rows[i].theta), cells[i].lengths, cells[i].cr,
                          cells[i].expected, cells[i].found,
                          cells[i].match ? "" : "differs"});
    write_out(render(t, format), out);
    return 0;
}

constexpr const char* kNumberingNote =
    "Theta indices are 1-based and follow the simple-root numbering of the\n"
    "built diagrams: A/B/C/D chain order; F4 with the double bond between a2\n"
    "and a3 (long roots first); E6/E7/E8 with a1 the half-integral node and\n"
    "a2..a7 the chain e_i - e_{i-1}. Note the E-series roles of a1 and a2 are\n"
    "swapped relative to Bourbaki numbering; pass --convention bourbaki to\n"
    "construct with Bourbaki coordinates.";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact root-system projection toolkit"};
    app.footer(kNumberingNote);
    app.require_subcommand(1);

    std::string type, convention = "labesse", theta_arg, format = "json", out, in;
    unsigned workers = 1;
    if (const char* env = std::getenv("ROOTPROJ_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) workers = (unsigned)w;
    }
    bool pairs = false, max_rank = false;
    int theorem = 0, max_n = 8;
    std::string family, system;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "markdown"}));
        cmd->add_option("--out", out);
        cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
    };
    auto* c_construct = app.add_subcommand("construct", "emit a root system");
    c_construct->add_option("--type", type)->required();
    c_construct->add_option("--convention", convention);
    add_common(c_construct);

    auto* c_project = app.add_subcommand("project", "project away span(theta)");
    c_project->add_option("--type", type);
    c_project->add_option("--convention", convention);
    c_project->add_option("--in", in, "system JSON from `construct`");
    c_project->add_option("--theta", theta_arg)->required();
    add_common(c_project);

    auto* c_analyze = app.add_subcommand("analyze", "pair angles and subsystems");
    c_analyze->add_option("--type", type);
    c_analyze->add_option("--convention", convention);
    c_analyze->add_option("--in", in, "system JSON from `construct`");
    c_analyze->add_option("--theta", theta_arg)->required();
    c_analyze->add_flag("--pairs", pairs);
    c_analyze->add_flag("--max-rank", max_rank);
    add_common(c_analyze);

    auto* c_sweep = app.add_subcommand("sweep", "all proper nonempty theta");
    c_sweep->add_option("--type", type)->required();
    c_sweep->add_option("--convention", convention);
    add_common(c_sweep);

    auto* c_verify = app.add_subcommand("verify", "confront claims with search");
    c_verify->add_option("--theorem", theorem)->required();
    c_verify->add_option("--family", family);
    c_verify->add_option("--max-n", max_n);
    c_verify->add_option("--system", system);
    add_common(c_verify);

    auto* c_table = app.add_subcommand("table", "case table with diff column");
    c_table->add_option("--system", system)->required();
    add_common(c_table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto need_system = [&]() -> RootSystemData {
            if (!in.empty()) return system_from_file(in);
            if (type.empty()) throw std::invalid_argument("--type or --in required");
            return build(label_of(type, convention));
        };
        if (c_construct->parsed())
            return run_construct(label_of(type, convention), format, out);
        if (c_project->parsed()) {
            auto sys = need_system();
            return run_project(sys, parse_theta(theta_arg, sys.label.rank), format, out);
        }
        if (c_analyze->parsed()) {
            auto sys = need_system();
            return run_analyze(sys, parse_theta(theta_arg, sys.label.rank), pairs,
                               max_rank, workers, format, out);
        }
        if (c_sweep->parsed())
            return run_sweep(label_of(type, convention), workers, format, out);
        if (c_verify->parsed())
            return run_verify(theorem, family, max_n, system, workers, format, out);
        if (c_table->parsed()) return run_table(system, workers, format, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
