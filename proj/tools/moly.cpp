// moly: exact local cohomology of squarefree monomial ideals, commutant
// algebras of diagram representations, and motivic Lyubeznik numbers.

#include <CLI11.hpp>

#include <moly/bridge.hpp>
#include <moly/json_io.hpp>
#include <moly/localcoh.hpp>
#include <moly/parallel.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using moly::Json;

constexpr int EXIT_INPUT = 1;
constexpr int EXIT_VERIFY = 2;

struct Options {
    std::string command;
    std::string input;
    std::string format = "json";
    bool box = false;
    unsigned long seed = 0;
    int jobs = 1;
};

Json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
}

std::string json_tsv_scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

/// Flat TSV rendering: one "path<TAB>value" line per leaf, depth-first in
/// emission order.
void emit_tsv(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            emit_tsv(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        int idx = 0;
        for (const auto& v : j) emit_tsv(v, prefix + "[" + std::to_string(idx++) + "]", out);
    } else {
        out << prefix << '\t' << json_tsv_scalar(j) << '\n';
    }
}

void emit(const Json& j, const Options& opt) {
    if (opt.format == "tsv") {
        std::ostringstream ss;
        emit_tsv(j, "", ss);
        std::cout << ss.str();
    } else {
        std::cout << j.dump(2) << '\n';
    }
}

int run_lc(const Json& in, const Options& opt) {
    const moly::SqfIdeal ideal = moly::parse_ideal(in);
    Json out;
    out["ideal"] = moly::ideal_to_json(ideal);
    out["height"] = moly::height(ideal);
    out["dim"] = moly::variety_dim(ideal);
    Json per_degree = Json::object();
    const int lo = in.contains("deg") ? in["deg"].get<int>() : 0;
    const int hi = in.contains("deg") ? in["deg"].get<int>() : ideal.n();
    for (int deg = lo; deg <= hi; ++deg) {
        const moly::StraightModule h = moly::local_cohomology(ideal, deg);
        per_degree[std::to_string(deg)] = moly::straight_dims_json(h);
    }
    out["local_cohomology"] = std::move(per_degree);
    if (opt.box) {
        Json oracle = Json::object();
        for (int deg = lo; deg <= hi; ++deg) {
            Json table = Json::object();
            for (const auto& [a, dim] : moly::oracle_extended(ideal, deg, {-2, 1})) {
                if (dim == 0) continue;
                std::string key;
                for (size_t t = 0; t < a.size(); ++t) {
                    if (t) key += ",";
                    key += std::to_string(a[t]);
                }
                table[key] = dim;
            }
            oracle[std::to_string(deg)] = std::move(table);
        }
        out["oracle_box"] = std::move(oracle);
    }
    emit(out, opt);
    return 0;
}

int run_lyu(const Json& in, const Options& opt) {
    const moly::SqfIdeal ideal = moly::parse_ideal(in);
    const moly::LyubeznikTable t = moly::lyubeznik_table(ideal);
    if (opt.format == "tsv")
        std::cout << moly::lyubeznik_tsv(t);
    else
        std::cout << moly::lyubeznik_json(t).dump(2) << '\n';
    return 0;
}

int run_mv(const Json& in, const Options& opt) {
    const int n = in.at("n").get<int>();
    const moly::SqfIdeal i = moly::parse_ideal_field(in, "i", n);
    const moly::SqfIdeal j = moly::parse_ideal_field(in, "j", n);
    const moly::MVReport rep = moly::mayer_vietoris(i, j);
    Json out;
    out["exact"] = rep.exact;
    out["matches_direct"] = rep.matches_direct;
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        bool any = false;
        for (int v : row.sum) any = any || v;
        for (int v : row.pair) any = any || v;
        for (int v : row.cone) any = any || v;
        if (!any) continue;
        rows.push_back(Json{{"degree", row.degree},
                            {"sum", moly::dims_vector_json(row.sum, n)},
                            {"pair", moly::dims_vector_json(row.pair, n)},
                            {"intersection", moly::dims_vector_json(row.cone, n)},
                            {"direct", moly::dims_vector_json(row.direct, n)}});
    }
    out["degrees"] = std::move(rows);
    emit(out, opt);
    return (rep.exact && rep.matches_direct) ? 0 : EXIT_VERIFY;
}

int run_relc(const Json& in, const Options& opt) {
    const int n = in.at("n").get<int>();
    const moly::SqfIdeal y = moly::parse_ideal_field(in, "y", n);
    moly::Subvariety z;
    if (in.contains("z") && !in["z"].is_null()) z = moly::parse_ideal_field(in, "z", n);
    moly::RelativeModel rm = moly::relative_model(y, z);
    Json out;
    Json per_degree = Json::object();
    const int lo = in.contains("deg") ? in["deg"].get<int>() : rm.cone.cone.first_degree();
    const int hi = in.contains("deg") ? in["deg"].get<int>() : rm.cone.cone.last_degree() + 1;
    for (int deg = lo; deg <= hi; ++deg) {
        const auto dims = moly::cohomology_dims_at(rm.cone.cone, deg);
        bool any = false;
        for (int v : dims) any = any || v;
        if (any) per_degree[std::to_string(deg)] = moly::dims_vector_json(dims, n);
    }
    out["relative_cohomology"] = std::move(per_degree);
    const moly::LESReport les = moly::cone_les_report(rm.z_cech, rm.y_cech, rm.map, rm.cone);
    out["les_exact"] = les.exact;
    emit(out, opt);
    return les.exact ? 0 : EXIT_VERIFY;
}

int run_strat(const Json& in, const Options& opt) {
    const moly::SqfIdeal ideal = moly::parse_ideal(in);
    const moly::Stratification s = moly::skeleton_stratification(ideal);
    const moly::CellularReport cr = moly::cellular_check(s);
    Json out;
    Json levels = Json::array();
    for (int k = 0; k <= s.top(); ++k) {
        Json lv;
        lv["level"] = k;
        lv["ideal"] = s.levels[k] ? moly::ideal_to_json(*s.levels[k]) : Json(nullptr);
        lv["ok"] = cr.levels[k].ok;
        if (!cr.levels[k].degenerate) lv["concentrated_in"] = cr.levels[k].required_degree;
        levels.push_back(std::move(lv));
    }
    out["levels"] = std::move(levels);
    out["cellular"] = cr.cellular;
    bool comparison = false;
    if (cr.cellular) {
        const moly::StratComplexResult sc = moly::strat_complex(s);
        comparison = sc.comparison_ok;
        out["complex_matches_local_cohomology"] = sc.comparison_ok;
        Json terms = Json::array();
        for (size_t t = 0; t < sc.complex.terms.size(); ++t)
            terms.push_back(Json{{"degree", sc.complex.offset + static_cast<int>(t)},
                                 {"dims", moly::straight_dims_json(sc.complex.terms[t])}});
        out["complex_terms"] = std::move(terms);
    }
    emit(out, opt);
    return (cr.cellular && comparison) ? 0 : EXIT_VERIFY;
}

int run_prop3(const Json& in, const Options& opt) {
    const int n = in.at("n").get<int>();
    const moly::SqfIdeal i = moly::parse_ideal_field(in, "i", n);
    const moly::SqfIdeal j = moly::parse_ideal_field(in, "j", n);
    const moly::InterpolationReport rep = moly::prop3_run(i, j);
    Json out;
    out["found"] = rep.found ? moly::ideal_to_json(*rep.found) : Json(nullptr);
    out["candidates_tried"] = rep.candidates_tried;
    out["dims_match"] = rep.dims_match;
    out["five_term_exact"] = rep.five_term_exact;
    emit(out, opt);
    return 0;  // "none found" is a legitimate outcome
}

int run_nori_end(const Json& in, const Options& opt) {
    const moly::Representation rep = moly::parse_representation(in);
    const moly::FDAlgebra a =
        moly::end_algebra(rep, moly::FullSubdiagram::whole(rep.diagram));
    Json out = moly::algebra_to_json(a);
    Json verts = Json::array();
    for (const auto& v : rep.diagram.vertices()) verts.push_back(v);
    out["vertex_order"] = std::move(verts);
    emit(out, opt);
    return 0;
}

int run_nori_length(const Json& in, const Options& opt) {
    const moly::Representation rep = moly::parse_representation(in.at("diagram"));
    const std::string vertex = in.at("vertex").get<std::string>();
    const moly::FullSubdiagram whole = moly::FullSubdiagram::whole(rep.diagram);
    const moly::FDAlgebra a = moly::end_algebra(rep, whole);
    const moly::AModule m = moly::vertex_module(rep, whole, vertex);
    const moly::CompositionSeries cs = moly::composition_series(a, m, opt.seed);
    Json out;
    out["vertex"] = vertex;
    out["module_dim"] = m.dim;
    out["end_dim"] = a.dim();
    Json action = Json::array();
    for (const auto& act : m.action) action.push_back(moly::matrix_to_json(act));
    out["module_action"] = std::move(action);
    out["length"] = cs.length;
    out["certified"] = cs.certified;
    Json steps = Json::array();
    for (const auto& s : cs.series) steps.push_back(s.cols());
    out["series_dims"] = std::move(steps);
    emit(out, opt);
    return 0;
}

int run_motive(const Json& in, const Options& opt) {
    const moly::SqfIdeal ideal = moly::parse_ideal(in);
    Json entries = Json::array();
    bool bound_ok = true;
    for (const moly::MotiveEntry& e : moly::motive_sweep(ideal, opt.seed)) {
        entries.push_back(moly::motive_json(e));
        if (e.motivic_length > e.lambda) bound_ok = false;
        if (e.lambda == 1 && e.motivic_length != 1) bound_ok = false;
    }
    Json out;
    out["ideal"] = moly::ideal_to_json(ideal);
    out["entries"] = std::move(entries);
    emit(out, opt);
    return bound_ok ? 0 : EXIT_VERIFY;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moly: exact local cohomology, commutant algebras, motivic Lyubeznik numbers"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> commands = {"lc",    "lyu",      "mv",          "relc", "strat",
                                               "prop3", "nori-end", "nori-length", "motive"};
    const std::map<std::string, std::string> descriptions = {
        {"lc", "local cohomology dims per subset"},
        {"lyu", "Lyubeznik table"},
        {"mv", "Mayer-Vietoris report"},
        {"relc", "relative local cohomology"},
        {"strat", "skeleton stratification, cellularity, Cousin-type complex"},
        {"prop3", "interpolating-ideal search between nested ideals"},
        {"nori-end", "commutant algebra of a diagram representation"},
        {"nori-length", "composition length of a vertex module"},
        {"motive", "motivic Lyubeznik sweep over all (r, i)"}};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--input", opt.input, "input JSON file")->required();
        sub->add_option("--format", opt.format, "output format: json|tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
        sub->add_flag("--box", opt.box, "include the extended-box oracle report");
        sub->add_option("--seed", opt.seed, "seed for randomized searches");
        sub->add_option("--jobs", opt.jobs, "worker threads for subset-parallel loops")
            ->check(CLI::PositiveNumber);
        sub->callback([&opt, name] { opt.command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    moly::worker_count() = opt.jobs;

    try {
        const Json in = load_input(opt.input);
        if (opt.command == "lc") return run_lc(in, opt);
        if (opt.command == "lyu") return run_lyu(in, opt);
        if (opt.command == "mv") return run_mv(in, opt);
        if (opt.command == "relc") return run_relc(in, opt);
        if (opt.command == "strat") return run_strat(in, opt);
        if (opt.command == "prop3") return run_prop3(in, opt);
        if (opt.command == "nori-end") return run_nori_end(in, opt);
        if (opt.command == "nori-length") return run_nori_length(in, opt);
        if (opt.command == "motive") return run_motive(in, opt);
        std::cerr << "unknown command\n";
        return EXIT_INPUT;
    } catch (const moly::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return EXIT_VERIFY;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return EXIT_INPUT;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return EXIT_INPUT;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_VERIFY;
    }
}
