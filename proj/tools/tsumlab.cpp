// tsumlab command-line driver.
//
// Exit codes: 0 success, 1 a check failed (a JSON report says which),
// 2 usage, parse or I/O error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsumlab/tsumlab.hpp"

namespace fs = std::filesystem;
using namespace tsumlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Caps {
    std::string max_group = std::to_string(kDefaultGroupCap);
    std::uint64_t max_n = std::uint64_t{1} << 12;
    bool unsafe = false;

    void group(const GroupSpec& g) const {
        if (unsafe) return;
        if (g.order() > parse_decimal(max_group)) {
            throw Error(Errc::GroupTooLarge, "|G| = " + g.order().str() + " exceeds --max-group " + max_group + " (use --unsafe)");
        }
    }
    void n(std::uint64_t n) const {
        if (!unsafe && n > max_n) {
            throw Error(Errc::ParameterOverflow, "n = " + std::to_string(n) + " exceeds --max-n " + std::to_string(max_n) + " (use --unsafe)");
        }
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    write_text_file(path, text);
}

std::string in_dir(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void make_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoError, "cannot create directory '" + dir + "': " + ec.message());
}

std::uint64_t json_u64(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) throw Error(Errc::ParseError, where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string group;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    std::string out;
};

TsumInstance random_instance(const GroupSpec& g, std::uint64_t n, Rng& rng) {
    if (Id(n) > g.order()) throw Error(Errc::InvalidParameters, "n exceeds |G|");
    auto draw = [&] {
        std::set<Id> s;
        while (s.size() < n) s.insert(rng.below(g.order()));
        return std::vector<Id>(s.begin(), s.end());
    };
    auto a1 = draw();
    auto a2 = draw();
    return TsumInstance::make(g, std::move(a1), std::move(a2));
}

int run_gen(const GenArgs& a, const Caps& caps) {
    const auto g = parse_group_string(a.group);
    caps.group(g);
    caps.n(a.n);
    Rng rng(a.seed);
    emit(a.out, dump_json(instance_to_json(random_instance(g, a.n, rng))));
    return kExitOk;
}

// ---- reduce butterfly ------------------------------------------------------

struct ButterflyArgs {
    std::uint64_t B = 2;
    unsigned d = 1;
    std::string mode = "cyclic";
    std::string edges = "full";
    std::string edges_file;
    std::uint64_t seed = 1;
    std::string out;
    bool check = false;
};

ButterflyInstance butterfly_graph(const ButterflyArgs& a) {
    if (!a.edges_file.empty()) {
        const auto j = read_json_file(a.edges_file);
        const auto& list = j.is_object() && j.contains("edges") ? j["edges"] : j;
        if (!list.is_array()) throw Error(Errc::ParseError, a.edges_file + ": expected an array of [k, i, j] edges");
        ButterflyInstance g(a.B, a.d);
        for (std::size_t e = 0; e < list.size(); ++e) {
            const auto where = a.edges_file + ": edges[" + std::to_string(e) + "]";
            if (!list[e].is_array() || list[e].size() != 3) throw Error(Errc::ParseError, where + ": expected [k, i, j]");
            const auto k = json_u64(list[e][0], where + "[0]");
            g.set(ButterflyEdge{static_cast<unsigned>(k), json_u64(list[e][1], where + "[1]"), json_u64(list[e][2], where + "[2]")}, true);
        }
        return g;
    }
    if (a.edges == "full") return ButterflyInstance::full(a.B, a.d);
    if (a.edges == "empty") return ButterflyInstance(a.B, a.d);
    if (a.edges == "random") {
        Rng rng(a.seed);
        return ButterflyInstance::random(a.B, a.d, rng);
    }
    throw Error(Errc::InvalidParameters, "--edges must be full, empty or random");
}

int run_reduce_butterfly(const ButterflyArgs& a, const Caps& caps) {
    const auto mode = parse_group_mode(a.mode);
    ButterflyLayout layout(a.B, a.d, mode);
    caps.group(layout.group());
    const auto g = butterfly_graph(a);
    caps.n(g.edge_count());
    const auto enc = encode_instance(g, mode);

    Json queries = Json::array();
    for (std::uint64_t s = 0; s < g.labels(); ++s)
        for (std::uint64_t t = 0; t < g.labels(); ++t)
            queries.push_back(Json{{"s", s}, {"t", t}, {"z", encode_query(enc.layout, s, t).str()}});
    Json qdoc{{"B", a.B}, {"d", a.d}, {"mode", group_mode_name(mode)}, {"queries", queries}};

    auto report = make_report("butterfly-reduction");
    report["B"] = a.B;
    report["d"] = a.d;
    report["mode"] = group_mode_name(mode);
    report["group"] = enc.group.describe();
    report["group_order"] = enc.group.order().str();
    report["n"] = enc.instance.n();
    report["edges_present"] = std::count(g.edges().begin(), g.edges().end(), true);

    bool ok = true;
    if (a.check) {
        const auto eq = check_equivalence(g, mode);
        Json v = Json::array();
        for (const auto& x : eq.violations) v.push_back(Json{{"s", x.s}, {"t", x.t}, {"witness", x.witness}, {"reachable", x.reachable}});
        report["queries_checked"] = eq.queries;
        report["violations"] = v;
        report["ok"] = eq.ok();
        ok = eq.ok();
    }
    if (!a.out.empty()) {
        make_dir(a.out);
        emit(in_dir(a.out, "instance.json"), dump_json(instance_to_json(enc.instance)));
        emit(in_dir(a.out, "queries.json"), dump_json(qdoc));
        emit(in_dir(a.out, "report.json"), dump_json(report));
    }
    std::cout << dump_json(report);
    return ok ? kExitOk : kExitCheckFailed;
}

// ---- reduce lsd ------------------------------------------------------------

struct LsdArgs {
    std::uint64_t N = 0;
    std::uint64_t B = 0;
    unsigned ell = 1;
    std::string mode = "cyclic";
    std::string x_file;
    std::string y_file;
    bool random = false;
    std::uint64_t seed = 1;
    unsigned w = 64;
    std::string out;
    bool check = false;
};

LsdInstance lsd_input(const LsdArgs& a) {
    LsdInstance inst{a.N, a.B, {}, {}};
    if (a.random) {
        Rng rng(a.seed);
        for (std::uint64_t j = 0; j < a.N; ++j) inst.Y.push_back(rng.below(a.B));
        for (std::uint64_t j = 0; j < a.N; ++j)
            for (std::uint64_t b = 0; b < a.B; ++b)
                if (rng.below(std::uint64_t{4}) == 0) inst.X.push_back({j, b});
    } else {
        if (a.x_file.empty() || a.y_file.empty()) throw Error(Errc::InvalidParameters, "give --x-file and --y-file, or --random");
        const auto xj = read_json_file(a.x_file);
        if (!xj.is_array()) throw Error(Errc::ParseError, a.x_file + ": expected an array of [block, value] pairs");
        for (std::size_t i = 0; i < xj.size(); ++i) {
            const auto where = a.x_file + ": [" + std::to_string(i) + "]";
            if (!xj[i].is_array() || xj[i].size() != 2) throw Error(Errc::ParseError, where + ": expected [block, value]");
            inst.X.push_back({json_u64(xj[i][0], where + "[0]"), json_u64(xj[i][1], where + "[1]")});
        }
        const auto yj = read_json_file(a.y_file);
        if (!yj.is_array()) throw Error(Errc::ParseError, a.y_file + ": expected an array of values");
        for (std::size_t i = 0; i < yj.size(); ++i) inst.Y.push_back(json_u64(yj[i], a.y_file + ": [" + std::to_string(i) + "]"));
    }
    inst.validate();
    return inst;
}

int run_reduce_lsd(const LsdArgs& a, const Caps& caps) {
    const auto mode = parse_group_mode(a.mode);
    const auto inst = lsd_input(a);
    const auto L = lsd_layout(inst.N, inst.B, a.ell, mode);
    caps.group(L.group());
    const auto enc = encode_bob(inst, a.ell, mode);
    caps.n(enc.instance.n());
    const auto z = encode_alice(inst, a.ell, mode);

    SumsetTableSolution sol(enc.group, a.w, false);
    const auto mem = sol.preprocess(enc.instance);
    const auto st = simulate_protocol(inst, a.ell, sol, mem, mode);

    Json qdoc{{"N", inst.N}, {"B", inst.B}, {"ell", a.ell}, {"mode", group_mode_name(mode)}, {"queries", ids_to_json(z)}};
    CsvTable comm({"alice_bits", "bob_bits", "rounds", "cells_revealed", "disjoint"});
    comm.add({std::to_string(st.alice_bits), std::to_string(st.bob_bits), std::to_string(st.rounds),
              std::to_string(st.cells_revealed), st.disjoint ? "1" : "0"});

    auto report = make_report("lsd-reduction");
    report["N"] = inst.N;
    report["B"] = inst.B;
    report["ell"] = a.ell;
    report["mode"] = group_mode_name(mode);
    report["group"] = enc.group.describe();
    report["A1_size"] = enc.A1.size();
    report["A2_size"] = enc.A2.size();
    report["n"] = enc.instance.n();
    report["disjoint_direct"] = inst.disjoint();
    report["disjoint_protocol"] = st.disjoint;

    bool ok = true;
    if (a.check) {
        const bool via_oracle =
            decide_disjointness(inst, a.ell, [&](const Id& q) { return brute_force_query(enc.instance, q).found; }, mode);
        report["disjoint_oracle"] = via_oracle;
        ok = via_oracle == inst.disjoint() && st.disjoint == inst.disjoint();
        report["ok"] = ok;
    }
    if (!a.out.empty()) {
        make_dir(a.out);
        emit(in_dir(a.out, "instance.json"), dump_json(instance_to_json(enc.instance)));
        emit(in_dir(a.out, "queries.json"), dump_json(qdoc));
        emit(in_dir(a.out, "comm.csv"), comm.str());
        emit(in_dir(a.out, "report.json"), dump_json(report));
    }
    std::cout << dump_json(report);
    return ok ? kExitOk : kExitCheckFailed;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string instance;
    std::string solution = "sumset";
    std::string mode = "witness";
    unsigned w = 64;
    std::uint64_t seed = 1;
    std::string out;
};

int run_verify(const VerifyArgs& a, const Caps& caps) {
    const auto inst = instance_from_json(read_json_file(a.instance));
    caps.group(inst.group());
    caps.n(inst.n());
    AnswerMode mode;
    if (a.mode == "witness")
        mode = AnswerMode::Witness;
    else if (a.mode == "decision")
        mode = AnswerMode::Decision;
    else
        throw Error(Errc::InvalidParameters, "--mode must be witness or decision");

    std::vector<std::string> names;
    if (a.solution == "all")
        names = solution_names();
    else
        names.push_back(a.solution);

    auto report = make_report("verify");
    report["instance"] = fs::path(a.instance).filename().string();
    report["group"] = inst.group().describe();
    report["n"] = inst.n();
    report["mode"] = a.mode;
    Json rows = Json::array();
    bool ok = true;
    for (const auto& name : names) {
        const auto sol = make_solution(name, inst, a.w, a.seed);
        const auto sw = sweep_against_oracle(*sol, inst, mode);
        const auto d = sol->declared(mode);
        const bool pass = sw.mismatches == 0 && sw.max_probes <= sw.declared_T;
        ok = ok && pass;
        rows.push_back(Json{{"solution", name},
                            {"S", d.S},
                            {"w", d.w},
                            {"declared_T", sw.declared_T},
                            {"max_probes", sw.max_probes},
                            {"queries", sw.queries},
                            {"mismatches", sw.mismatches},
                            {"mismatched", ids_to_json(sw.mismatched)},
                            {"pass", pass}});
    }
    report["solutions"] = rows;
    report["ok"] = ok;
    emit(a.out, dump_json(report));
    if (!a.out.empty() && !ok) std::cerr << dump_json(report);
    return ok ? kExitOk : kExitCheckFailed;
}

// ---- adversary -------------------------------------------------------------

struct AdversaryGenArgs {
    std::string group;
    std::string q_file;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    bool all = false;
    std::string out;
};

Json realization_json(const GroupSpec& g, const SubsetRealization& r) {
    return Json{{"group", group_to_json(g)}, {"Q", ids_to_json(r.Q)}, {"P", ids_to_json(r.P)}, {"A1", ids_to_json(r.A1)}, {"A2", ids_to_json(r.A2)}};
}

std::string mask_name(std::uint64_t mask, std::size_t width) {
    std::string bits(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if ((mask >> i) & 1) bits[width - 1 - i] = '1';
    return "realization_" + bits + ".json";
}

int run_adversary_gen(const AdversaryGenArgs& a, const Caps& caps) {
    const auto g = parse_group_string(a.group);
    caps.group(g);
    caps.n(a.n);
    auto Q = ids_from_json(read_json_file(a.q_file), a.q_file);
    for (std::size_t i = 0; i < Q.size(); ++i)
        if (!g.contains(Q[i])) throw Error(Errc::InvalidElement, a.q_file + ": [" + std::to_string(i) + "] not in " + g.describe());
    detail::sort_unique(Q);
    make_dir(a.out);
    auto report = make_report("adversary-gen");
    report["group"] = g.describe();
    report["q_size"] = Q.size();
    report["n"] = a.n;
    if (a.all) {
        const auto rs = enumerate_realizations(g, Q, a.n);
        for (std::uint64_t m = 0; m < rs.size(); ++m) emit(in_dir(a.out, mask_name(m, Q.size())), dump_json(realization_json(g, rs[m])));
        report["files"] = rs.size();
    } else {
        const auto s = sample_adversarial(g, Q, a.n, a.seed);
        const auto mask = subset_mask(s.realization.Q, s.realization.P);
        emit(in_dir(a.out, mask_name(mask, Q.size())), dump_json(realization_json(g, s.realization)));
        emit(in_dir(a.out, "instance.json"), dump_json(instance_to_json(s.instance)));
        report["P"] = ids_to_json(s.realization.P);
        report["files"] = 1;
    }
    std::cout << dump_json(report);
    return kExitOk;
}

struct AdversaryAuditArgs {
    std::string dir;
    std::string out;
};

int run_adversary_audit(const AdversaryAuditArgs& a) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(a.dir, ec)) {
        const auto name = e.path().filename().string();
        if (name.rfind("realization_", 0) == 0 && e.path().extension() == ".json") files.push_back(e.path().string());
    }
    if (ec) throw Error(Errc::IoError, "cannot read directory '" + a.dir + "': " + ec.message());
    if (files.empty()) throw Error(Errc::IoError, "no realization_*.json files in '" + a.dir + "'");
    std::sort(files.begin(), files.end());

    std::optional<GroupSpec> g;
    std::vector<Id> Q;
    std::vector<SubsetRealization> rs;
    for (const auto& f : files) {
        const auto j = read_json_file(f);
        if (!j.is_object()) throw Error(Errc::ParseError, f + ": expected an object");
        for (const char* key : {"group", "Q", "P", "A1", "A2"})
            if (!j.contains(key)) throw Error(Errc::ParseError, f + ": missing '" + key + "'");
        auto gf = group_from_json(j["group"], f + ": group");
        if (g && !(*g == gf)) throw Error(Errc::ParseError, f + ": group differs from the other files");
        g = gf;
        SubsetRealization r{ids_from_json(j["Q"], f + ": Q"), ids_from_json(j["P"], f + ": P"), ids_from_json(j["A1"], f + ": A1"),
                            ids_from_json(j["A2"], f + ": A2")};
        for (const auto* v : {&r.Q, &r.P, &r.A1, &r.A2})
            for (const auto& x : *v)
                if (!g->contains(x)) throw Error(Errc::InvalidElement, f + ": element " + x.str() + " not in " + g->describe());
        detail::sort_unique(r.Q);
        detail::sort_unique(r.P);
        Q = r.Q;
        rs.push_back(std::move(r));
    }

    auto report = make_report("adversary-audit");
    report["files"] = files.size();
    report["group"] = g->describe();
    bool ok = false;
    try {
        const auto rep = entropy_audit(*g, Q, rs);
        report["q_size"] = rep.q_size;
        report["realizations"] = rep.realizations;
        report["entropy_bits"] = rep.entropy_bits;
        report["full_entropy"] = rep.full_entropy;
        report["uniform_joint"] = rep.uniform_joint;
        report["invariants_hold"] = rep.invariants_hold;
        report["marginals"] = rep.marginals;
        Json hist = Json::object();
        for (const auto& [pat, c] : rep.histogram) hist[std::to_string(pat)] = c;
        report["histogram"] = hist;
        ok = rep.invariants_hold && rep.full_entropy && rep.uniform_joint;
    } catch (const Error& e) {
        if (e.code() != Errc::IncompleteCover && e.code() != Errc::InvalidParameters) throw;
        report["error"] = e.what();
    }
    report["ok"] = ok;
    emit(a.out, dump_json(report));
    return ok ? kExitOk : kExitCheckFailed;
}

// ---- bitprobe --------------------------------------------------------------

TwoProbeScheme scheme_from_json(const Json& j, const std::string& src) {
    if (!j.is_object()) throw Error(Errc::ParseError, src + ": expected an object");
    for (const char* key : {"group", "cells", "queries"})
        if (!j.contains(key)) throw Error(Errc::ParseError, src + ": missing '" + key + "'");
    TwoProbeScheme s;
    s.group = group_from_json(j["group"], src + ": group");
    s.S = json_u64(j["cells"], src + ": cells");
    const auto& qs = j["queries"];
    if (!qs.is_array()) throw Error(Errc::ParseError, src + ": queries: expected an array");
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto where = src + ": queries[" + std::to_string(i) + "]";
        if (!qs[i].is_object() || !qs[i].contains("u") || !qs[i].contains("v") || !qs[i].contains("table")) {
            throw Error(Errc::ParseError, where + ": expected {u, v, table}");
        }
        s.queries.push_back({json_u64(qs[i]["u"], where + ".u"), json_u64(qs[i]["v"], where + ".v"),
                             static_cast<unsigned>(json_u64(qs[i]["table"], where + ".table"))});
    }
    s.validate();
    return s;
}

Json scheme_to_json(const TwoProbeScheme& s) {
    Json qs = Json::array();
    for (const auto& q : s.queries) qs.push_back(Json{{"u", q.u}, {"v", q.v}, {"table", q.table}});
    return Json{{"group", group_to_json(s.group)}, {"cells", s.S}, {"queries", qs}};
}

Json verdict_json(const Verdict& v) {
    Json j{{"kind", verdict_name(v.kind)}, {"queries", v.queries}};
    if (v.node) j["node"] = *v.node;
    if (v.fixing_output) j["fixing_output"] = *v.fixing_output;
    if (v.parity) j["parity"] = *v.parity;
    return j;
}

struct BitprobeGenArgs {
    std::string group;
    std::string kind = "trivial";
    std::uint64_t cells = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_bitprobe_gen(const BitprobeGenArgs& a, const Caps& caps) {
    const auto g = parse_group_string(a.group);
    caps.group(g);
    TwoProbeScheme s;
    if (a.kind == "trivial") {
        s = TwoProbeScheme::trivial(g);
    } else if (a.kind == "random") {
        const auto nq = to_u64(g.order());
        s.group = g;
        s.S = a.cells ? a.cells : 2 * nq;
        Rng rng(a.seed);
        for (std::uint64_t q = 0; q < nq; ++q)
            s.queries.push_back({rng.below(s.S), rng.below(s.S), static_cast<unsigned>(rng.below(std::uint64_t{16}))});
    } else {
        throw Error(Errc::InvalidParameters, "--kind must be trivial or random");
    }
    emit(a.out, dump_json(scheme_to_json(s)));
    return kExitOk;
}

struct BitprobeAuditArgs {
    std::string scheme_file;
    std::string preprocess = "sumset-bits";
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_bitprobe_audit(const BitprobeAuditArgs& a, const Caps& caps) {
    const auto s = scheme_from_json(read_json_file(a.scheme_file), a.scheme_file);
    caps.group(s.group);
    const auto all = find_witnesses(s);

    auto report = make_report("bitprobe-audit");
    report["group"] = s.group.describe();
    report["cells"] = s.S;
    report["queries"] = s.queries.size();
    Json classes = Json::object();
    for (const char* k : {"const", "copy", "and", "xor"}) classes[k] = 0;
    for (std::uint64_t q = 0; q < s.queries.size(); ++q) classes[fn_type_name(s.effective_type(q))] = classes[fn_type_name(s.effective_type(q))].get<int>() + 1;
    report["types"] = classes;
    Json ws = Json::array();
    for (const auto& v : all) ws.push_back(verdict_json(v));
    report["witnesses"] = ws;
    const Verdict top = all.empty() ? Verdict{} : all.front();
    report["verdict"] = verdict_json(top);

    try {
        const auto edges = query_graph_edges(s);
        const auto gc = girth_bound_check(s.S, edges.size(), &edges);
        report["girth"] = Json{{"average_degree", gc.average_degree},
                               {"analytic_bound", gc.analytic_bound ? Json(*gc.analytic_bound) : Json(nullptr)},
                               {"bfs_girth", gc.bfs_girth ? Json(*gc.bfs_girth) : Json(nullptr)},
                               {"consistent", gc.consistent}};
    } catch (const Error& e) {
        if (e.code() != Errc::DegreeTooSmall) throw;
        report["girth"] = nullptr;
    }

    if (top.kind != VerdictKind::NotRefuted && top.kind != VerdictKind::ConstEdge) {
        const auto r = empirical_refute(s, top.queries, a.n, a.preprocess, a.seed);
        Json rj{{"consistent", r.consistent},
                {"patterns", r.patterns},
                {"reachable_patterns", r.reachable_patterns},
                {"touched_cells", r.touched_cells},
                {"exhaustive", r.exhaustive},
                {"preprocess", a.preprocess}};
        rj["failing"] = r.failing ? realization_json(s.group, *r.failing) : Json(nullptr);
        rj["wrong_query"] = r.wrong_query ? Json(*r.wrong_query) : Json(nullptr);
        report["refutation"] = rj;
    }
    emit(a.out, dump_json(report));
    return kExitOk;
}

// ---- owf -------------------------------------------------------------------

struct OwfArgs {
    std::uint64_t N = 0;
    std::string group;
    std::string adversary = "all";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::uint64_t m = 16;
    std::uint64_t t = 16;
    unsigned w = 64;
    std::string out;
};

int run_owf(const OwfArgs& a, const Caps& caps) {
    caps.n(a.N);
    const auto g = a.group.empty() ? GroupSpec::cyclic(a.N) : parse_group_string(a.group);
    caps.group(g);
    const auto R = make_oracle(a.N, &g, a.seed);
    std::vector<std::string> names;
    if (a.adversary == "all")
        names = adversary_names();
    else
        names.push_back(a.adversary);

    CsvTable csv({"adversary", "N", "S", "w", "T", "success", "dtt_line", "hellman_line"});
    bool ok = true;
    for (const auto& name : names) {
        auto adv = make_adversary(name, a.seed, a.m, a.t, a.w);
        const auto r = run_experiment(*adv, R, a.trials, a.seed + 1);
        if (r.bad_preimages) {
            ok = false;
            std::cerr << name << ": " << r.bad_preimages << " returned pairs do not evaluate to y\n";
        }
        csv.add({r.adversary, std::to_string(r.N), std::to_string(r.S), std::to_string(r.w), std::to_string(r.T), fmt_double(r.success),
                 fmt_double(r.dtt_line), fmt_double(r.hellman_line)});
    }
    emit(a.out, csv.str());
    return ok ? kExitOk : kExitCheckFailed;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string group;
    std::uint64_t n = 0;
    std::uint64_t instances = 3;
    std::uint64_t seed = 1;
    unsigned w = 64;
    std::string out;
};

int run_bench(const BenchArgs& a, const Caps& caps) {
    const auto g = parse_group_string(a.group);
    caps.group(g);
    caps.n(a.n);
    Rng rng(a.seed);
    CsvTable csv({"solution", "instance", "n", "S", "w", "declared_T", "max_probes", "queries", "mismatches"});
    bool ok = true;
    for (std::uint64_t i = 0; i < a.instances; ++i) {
        const auto inst = random_instance(g, a.n, rng);
        for (const auto& name : solution_names()) {
            const auto sol = make_solution(name, inst, a.w, a.seed + i);
            const auto sw = sweep_against_oracle(*sol, inst);
            ok = ok && sw.mismatches == 0 && sw.max_probes <= sw.declared_T;
            csv.add({name, std::to_string(i), std::to_string(inst.n()), std::to_string(sol->declared(AnswerMode::Witness).S),
                     std::to_string(a.w), std::to_string(sw.declared_T), std::to_string(sw.max_probes), std::to_string(sw.queries),
                     std::to_string(sw.mismatches)});
        }
    }
    emit(a.out, csv.str());
    return ok ? kExitOk : kExitCheckFailed;
}

CLI::App* deepest(CLI::App* app) {
    for (auto* sub : app->get_subcommands())
        if (sub->parsed()) return deepest(sub);
    return app;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3SUM-Indexing lab: instances, reductions, cell-probe checks and inversion experiments"};
    app.require_subcommand(1);
    Caps caps;
    app.add_option("--max-group", caps.max_group, "largest |G| accepted (decimal)")->capture_default_str();
    app.add_option("--max-n", caps.max_n, "largest set size accepted")->capture_default_str();
    app.add_flag("--unsafe", caps.unsafe, "ignore --max-group and --max-n");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "random instance as JSON");
    gen_cmd->add_option("--group", gen.group, "group, e.g. cyclic:101 or xor:8*cyclic:3")->required();
    gen_cmd->add_option("--n", gen.n, "size of A1 and A2")->required();
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output file (stdout if omitted)");

    auto* reduce_cmd = app.add_subcommand("reduce", "compile a problem to 3SUM-Indexing");
    reduce_cmd->require_subcommand(1);
    ButterflyArgs bf;
    auto* bf_cmd = reduce_cmd->add_subcommand("butterfly", "butterfly reachability");
    bf_cmd->add_option("--B", bf.B, "degree")->required();
    bf_cmd->add_option("--d", bf.d, "depth")->required();
    bf_cmd->add_option("--mode", bf.mode, "cyclic or xor")->capture_default_str();
    bf_cmd->add_option("--edges", bf.edges, "full, empty or random")->capture_default_str();
    bf_cmd->add_option("--edges-file", bf.edges_file, "JSON array of present [k, i, j] edges");
    bf_cmd->add_option("--seed", bf.seed)->capture_default_str();
    bf_cmd->add_option("--out", bf.out, "output directory");
    bf_cmd->add_flag("--check", bf.check, "check witness existence against reachability for every (s, t)");

    LsdArgs lsd;
    auto* lsd_cmd = reduce_cmd->add_subcommand("lsd", "blocked lopsided set disjointness");
    lsd_cmd->add_option("--N", lsd.N, "blocks")->required();
    lsd_cmd->add_option("--B", lsd.B, "block size")->required();
    lsd_cmd->add_option("--ell", lsd.ell, "blocks per query")->capture_default_str();
    lsd_cmd->add_option("--mode", lsd.mode, "cyclic or xor")->capture_default_str();
    lsd_cmd->add_option("--x-file", lsd.x_file, "Bob's set: JSON array of [block, value]");
    lsd_cmd->add_option("--y-file", lsd.y_file, "Alice's values: JSON array, one per block");
    lsd_cmd->add_flag("--random", lsd.random, "draw X and Y from --seed");
    lsd_cmd->add_option("--seed", lsd.seed)->capture_default_str();
    lsd_cmd->add_option("--w", lsd.w, "word size for the protocol simulation")->capture_default_str();
    lsd_cmd->add_option("--out", lsd.out, "output directory");
    lsd_cmd->add_flag("--check", lsd.check, "compare the reduction's verdict with the direct intersection test");

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "sweep a solution against the brute-force oracle");
    ver_cmd->add_option("--instance", ver.instance, "instance JSON")->required();
    ver_cmd->add_option("--solution", ver.solution, "sumset, scan, scan-bsearch, hellman or all")->capture_default_str();
    ver_cmd->add_option("--mode", ver.mode, "witness or decision")->capture_default_str();
    ver_cmd->add_option("--w", ver.w, "word size")->capture_default_str();
    ver_cmd->add_option("--seed", ver.seed)->capture_default_str();
    ver_cmd->add_option("--out", ver.out, "report file (stdout if omitted)");

    auto* adv_cmd = app.add_subcommand("adversary", "inputs realizing a chosen subset of queries");
    adv_cmd->require_subcommand(1);
    AdversaryGenArgs ag;
    auto* ag_cmd = adv_cmd->add_subcommand("gen", "sample (or enumerate with --all) subset realizations");
    ag_cmd->add_option("--group", ag.group)->required();
    ag_cmd->add_option("--q-file", ag.q_file, "JSON array of query ids")->required();
    ag_cmd->add_option("--n", ag.n, "set size")->required();
    ag_cmd->add_option("--seed", ag.seed)->capture_default_str();
    ag_cmd->add_flag("--all", ag.all, "one file per subset of Q");
    ag_cmd->add_option("--out", ag.out, "output directory")->required();
    AdversaryAuditArgs aa;
    auto* aa_cmd = adv_cmd->add_subcommand("audit", "entropy of the membership bits over a directory of realizations");
    aa_cmd->add_option("--dir", aa.dir)->required();
    aa_cmd->add_option("--out", aa.out, "report file (stdout if omitted)");

    auto* bp_cmd = app.add_subcommand("bitprobe", "two-probe bit scheme auditor");
    bp_cmd->require_subcommand(1);
    BitprobeAuditArgs ba;
    auto* ba_cmd = bp_cmd->add_subcommand("audit", "look for a refutation witness");
    ba_cmd->add_option("--scheme-file", ba.scheme_file, "scheme JSON: {group, cells, queries: [{u, v, table}]}")->required();
    ba_cmd->add_option("--preprocess", ba.preprocess, "sumset-bits, zeros or random")->capture_default_str();
    ba_cmd->add_option("--n", ba.n, "set size for the failing instance (default: witness size)");
    ba_cmd->add_option("--seed", ba.seed)->capture_default_str();
    ba_cmd->add_option("--out", ba.out, "report file (stdout if omitted)");
    BitprobeGenArgs bg;
    auto* bg_cmd = bp_cmd->add_subcommand("gen", "write a scheme file");
    bg_cmd->add_option("--group", bg.group)->required();
    bg_cmd->add_option("--kind", bg.kind, "trivial or random")->capture_default_str();
    bg_cmd->add_option("--cells", bg.cells, "cells for random schemes (default 2|G|)");
    bg_cmd->add_option("--seed", bg.seed)->capture_default_str();
    bg_cmd->add_option("--out", bg.out, "output file (stdout if omitted)");

    auto* owf_cmd = app.add_subcommand("owf", "immunized function inversion experiments");
    owf_cmd->require_subcommand(1);
    OwfArgs ow;
    auto* ow_cmd = owf_cmd->add_subcommand("attack", "run preprocessing adversaries, one CSV row each");
    ow_cmd->add_option("--N", ow.N, "oracle domain size")->required();
    ow_cmd->add_option("--group", ow.group, "oracle range (default cyclic:N)");
    ow_cmd->add_option("--adversary", ow.adversary, "table, hellman, tsum, null or all")->capture_default_str();
    ow_cmd->add_option("--trials", ow.trials)->capture_default_str();
    ow_cmd->add_option("--seed", ow.seed)->capture_default_str();
    ow_cmd->add_option("--m", ow.m, "Hellman chains")->capture_default_str();
    ow_cmd->add_option("--t", ow.t, "Hellman chain length")->capture_default_str();
    ow_cmd->add_option("--w", ow.w, "word size")->capture_default_str();
    ow_cmd->add_option("--out", ow.out, "CSV file (stdout if omitted)");

    BenchArgs be;
    auto* be_cmd = app.add_subcommand("bench", "probe counts of every solution over random instances");
    be_cmd->add_option("--group", be.group)->required();
    be_cmd->add_option("--n", be.n)->required();
    be_cmd->add_option("--instances", be.instances)->capture_default_str();
    be_cmd->add_option("--seed", be.seed)->capture_default_str();
    be_cmd->add_option("--w", be.w, "word size")->capture_default_str();
    be_cmd->add_option("--out", be.out, "CSV file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << deepest(&app)->help();
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen, caps);
        if (*bf_cmd) return run_reduce_butterfly(bf, caps);
        if (*lsd_cmd) return run_reduce_lsd(lsd, caps);
        if (*ver_cmd) return run_verify(ver, caps);
        if (*ag_cmd) return run_adversary_gen(ag, caps);
        if (*aa_cmd) return run_adversary_audit(aa);
        if (*ba_cmd) return run_bitprobe_audit(ba, caps);
        if (*bg_cmd) return run_bitprobe_gen(bg, caps);
        if (*ow_cmd) return run_owf(ow, caps);
        if (*be_cmd) return run_bench(be, caps);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cerr << app.help();
    return kExitUsage;
}
