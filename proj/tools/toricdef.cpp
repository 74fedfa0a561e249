// Batch front end over the toric deformation library. Parses cone and
// Poisson documents, dispatches one subcommand, and prints a single compact
// JSON report. Exit code 0 carries a report, 1 carries {"error": message}
// for domain failures (unreadable files, malformed documents, violated math
// preconditions), 2 signals a command-line usage failure. All numerical work
// happens in the library; this file only adapts formats.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricdef/closedform.hpp"
#include "toricdef/json_io.hpp"

namespace {

using namespace toricdef;

struct Options {
    std::string cone_path;
    std::string poisson_path;
    std::string degree;
    std::string box;
    std::string sense = "minus";
    std::size_t hodge_index = 0;  // 0 means every wedge index
    std::size_t position = 1;     // cohomology position for t1
    std::size_t order = 4;        // truncation order for quantize
    std::size_t check_samples = 200;
    std::size_t star_samples = 100;
    std::uint64_t seed = 2026;
    std::string output;
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::domain_error(path + ": " + e.what());
    }
}

void emit(const Json& report, const std::string& path) {
    std::string text = report.dump() + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::domain_error("cannot write output file: " + path);
    out << text;
}

Json cmd_analyze(const Cone& c) {
    Json out;
    out["lattice_rank"] = c.lattice_rank();
    out["torus_rank"] = c.torus_rank();
    out["rays"] = json_vecs(c.rays());
    out["full_dimensional"] = c.is_full_dimensional();
    const bool pointed = c.is_full_dimensional() && c.is_pointed();
    out["pointed"] = c.is_full_dimensional() ? Json(c.is_pointed()) : Json(nullptr);
    if (!pointed) {
        out["dual_rays"] = nullptr;
        out["smooth_codimension"] = nullptr;
        out["gorenstein"] = nullptr;
        out["class_group"] = nullptr;
        return out;
    }
    out["dual_rays"] = json_vecs(c.dual_rays());
    out["smooth_codimension"] = smooth_codimension(c);
    if (auto gd = gorenstein_data(c)) {
        Json g;
        g["canonical_degree"] = json_vec(gd->canonical_degree);
        g["index"] = gd->gor_index;
        out["gorenstein"] = g;
    } else {
        out["gorenstein"] = nullptr;
    }
    DegreeMap dm = degree_map(c);
    Json cg;
    cg["free_rank"] = dm.class_group.free_rank;
    Json torsion = Json::array();
    for (long long d : dm.class_group.torsion) torsion.push_back(d);
    cg["torsion"] = torsion;
    out["class_group"] = cg;
    return out;
}

Json cmd_hilbert(const Cone& c) {
    HilbertBasis e = hilbert_basis(c);
    Json out;
    out["count"] = e.elements.size();
    out["elements"] = json_vecs(e.elements);
    return out;
}

Json cmd_t1(const Cone& c, const Options& o) {
    LVec r = parse_degrees(o.degree);
    HilbertBasis e = hilbert_basis(c);
    HodgeDims dims = t_dims(c, e, Degree{r, parse_sense(o.sense)}, o.position);
    Json out;
    if (o.hodge_index == 0) {
        out["dims"] = json_dims(dims, c.lattice_rank());
    } else {
        Json one = Json::object();
        one[std::to_string(o.hodge_index)] = dims.get(o.hodge_index);
        out["dims"] = one;
    }
    return out;
}

Json cmd_scan(const Cone& c, const Options& o) {
    auto axes = parse_box(o.box);
    if (!axes.empty() && axes.size() != c.lattice_rank())
        throw std::domain_error("degree box: need one lo:hi range per lattice coordinate");
    Sense sense = parse_sense(o.sense);
    std::vector<Degree> box;
    for (const auto& r : box_points(axes)) box.push_back(Degree{r, sense});
    HilbertBasis e = hilbert_basis(c);
    Json table = Json::array();
    for (const auto& entry : scan_degrees(c, e, box)) {
        Json row;
        row["degree"] = json_vec(entry.degree);
        row["dims"] = json_dims(entry.dims, c.lattice_rank());
        table.push_back(row);
    }
    Json out;
    out["table"] = table;
    return out;
}

// The closed-form surface oracle needs the two parameters of the cyclic
// quotient, so this subcommand insists on the normal-form presentation with
// rays (1,0) and (-q,n) instead of guessing a lattice normalization.
Json cmd_oracle_compare(const Cone& c, const Options& o) {
    if (c.lattice_rank() != 2 || c.rays().size() != 2)
        throw std::domain_error("oracle-compare: expected a two-dimensional surface cone");
    long long n = 0, q = 0;
    bool matched = false;
    for (int pick = 0; pick < 2 && !matched; ++pick) {
        const LVec& unit = c.rays()[pick];
        const LVec& other = c.rays()[1 - pick];
        if (unit == LVec{1, 0} && other[1] >= 2 && -other[0] >= 1 && -other[0] < other[1]) {
            n = other[1];
            q = -other[0];
            matched = true;
        }
    }
    if (!matched)
        throw std::domain_error("oracle-compare: rays must be (1,0) and (-q,n) with 0 < q < n");
    std::set<LVec> degrees;
    for (const auto& r : surface_candidate_degrees(n, q)) degrees.insert(r);
    auto axes = parse_box(o.box);
    if (!axes.empty() && axes.size() != 2)
        throw std::domain_error("degree box: need one lo:hi range per lattice coordinate");
    for (const auto& r : box_points(axes)) degrees.insert(r);
    HilbertBasis e = hilbert_basis(c);
    Json rows = Json::array();
    bool all_equal = true;
    for (const auto& r : degrees) {
        HodgeDims hodge = t_dims(c, e, Degree{r, Sense::minus}, 1);
        HodgeDims closed;
        for (std::size_t i = 1; i <= 2; ++i) closed.dims[i] = surface_t1(n, q, r, i);
        const bool equal = hodge.get(1) == closed.get(1) && hodge.get(2) == closed.get(2);
        all_equal = all_equal && equal;
        Json row;
        row["degree"] = json_vec(r);
        row["closedform"] = json_dims(closed, 2);
        row["hodge"] = json_dims(hodge, 2);
        row["equal"] = equal;
        rows.push_back(row);
    }
    Json surface;
    surface["n"] = n;
    surface["q"] = q;
    Json out;
    out["surface"] = surface;
    out["rows"] = rows;
    out["all_equal"] = all_equal;
    return out;
}

Json cmd_poisson_check(const Cone& c, const PoissonStructure& p, const Options& o) {
    HilbertBasis e = hilbert_basis(c);
    const bool wd = well_defined_check(p, c, e);
    JacobiReport jr = jacobi_check(p, c, e, o.check_samples, o.seed);
    Json jac;
    jac["pass"] = jr.pass;
    jac["triples_checked"] = jr.triples_checked;
    jac["violation_count"] = jr.violation_count;
    Json violations = Json::array();
    for (const auto& v : jr.violations) {
        Json jv;
        jv["triple"] = json_vecs({v.triple[0], v.triple[1], v.triple[2]});
        jv["exponent"] = json_vec(v.exponent);
        jv["value"] = v.value.to_string();
        violations.push_back(jv);
    }
    jac["violations"] = violations;
    jac["projected_pass"] = jr.projected_pass;
    jac["projected_checked"] = jr.projected_checked;
    Json out;
    out["seed"] = o.seed;
    out["samples"] = o.check_samples;
    out["well_defined"] = wd;
    out["jacobi"] = jac;
    out["pass"] = wd && jr.pass && jr.projected_pass;
    return out;
}

Json cmd_quantize(const Cone& c, const PoissonStructure& p, const Options& o) {
    if (p.components.size() != 1)
        throw std::domain_error("quantize: constructive star products need exactly one component");
    for (long long x : p.components[0].degree)
        if (x != 0)
            throw std::domain_error(
                "quantize: constructive star products need a degree-zero component");
    HilbertBasis e = hilbert_basis(c);
    LiftedPoisson lift = lift_poisson(p, c, e, o.star_samples, o.star_samples, o.seed);
    StarProduct ambient = moyal_star(lift.components[0].form, o.order);
    StarProduct reduced = reduce_star(ambient, lift.map);
    McReport mc = mc_check(reduced, c, e, o.star_samples, o.seed);

    Json frame;
    frame["generators"] = json_vecs(lift.frame);
    Json units = Json::array();
    for (std::size_t u : lift.units) units.push_back(u);
    frame["units"] = units;

    Json lift_report;
    lift_report["frame_pass"] = lift.report.frame_pass;
    lift_report["round_trip_pass"] = lift.report.round_trip_pass;
    lift_report["support_pairs_checked"] = lift.report.support_pairs_checked;
    lift_report["support_violations"] = lift.report.support_violations;
    lift_report["jacobi_triples_checked"] = lift.report.jacobi_triples_checked;
    lift_report["jacobi_violations"] = lift.report.jacobi_violations;

    Json samples = Json::array();
    for (const auto& a : e.elements)
        for (const auto& b : e.elements) {
            Json s;
            s["a"] = json_vec(a);
            s["b"] = json_vec(b);
            s["coeffs"] = json_rats(star_coefficients(reduced, a, b));
            samples.push_back(s);
        }

    Json mc_report;
    mc_report["pass"] = mc.pass;
    mc_report["triples_checked"] = mc.triples_checked;
    mc_report["violation_count"] = mc.violation_count;
    Json violations = Json::array();
    for (const auto& v : mc.violations) {
        Json jv;
        jv["triple"] = json_vecs({v.triple[0], v.triple[1], v.triple[2]});
        jv["order"] = v.order;
        violations.push_back(jv);
    }
    mc_report["violations"] = violations;

    Json out;
    out["seed"] = o.seed;
    out["order"] = o.order;
    out["lift_frame"] = frame;
    out["F"] = json_mat(lift.components[0].form);
    out["lift_report"] = lift_report;
    out["star_samples"] = samples;
    out["mc_report"] = mc_report;
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"exact deformation spaces and quantization checks for affine toric varieties"};
    app.require_subcommand(1);
    Options o;

    auto add_cone = [&o](CLI::App* sub) {
        sub->add_option("--cone", o.cone_path, "cone JSON file")->required();
        sub->add_option("--output", o.output, "write the report to a file instead of stdout");
    };
    auto add_sense = [&o](CLI::App* sub) {
        sub->add_option("--sense", o.sense, "grading sense")
            ->check(CLI::IsMember({"minus", "plus"}))
            ->capture_default_str();
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "cone invariants: rays, duals, smoothness, class group");
    add_cone(analyze);

    CLI::App* hilbert = app.add_subcommand("hilbert", "minimal generating set of the dual monoid");
    add_cone(hilbert);

    CLI::App* t1 = app.add_subcommand("t1", "deformation space dimensions at one degree");
    add_cone(t1);
    t1->add_option("--degree", o.degree, "comma-separated degree vector")->required();
    t1->add_option("--hodge-index", o.hodge_index, "report a single wedge index");
    t1->add_option("--order", o.position, "cohomology position")->capture_default_str();
    add_sense(t1);

    CLI::App* scan = app.add_subcommand("scan", "nonzero dimension tables over a degree box");
    add_cone(scan);
    scan->add_option("--degree-box", o.box, "per-axis lo:hi ranges, comma separated");
    add_sense(scan);

    CLI::App* oracle = app.add_subcommand(
        "oracle-compare", "closed-form surface dimensions against the cochain computation");
    add_cone(oracle);
    oracle->add_option("--degree-box", o.box, "extra degrees beyond the candidate set");

    CLI::App* pcheck =
        app.add_subcommand("poisson-check", "well-definedness and Jacobi checks on a structure");
    add_cone(pcheck);
    pcheck->add_option("--poisson", o.poisson_path, "Poisson structure JSON file")->required();
    pcheck->add_option("--samples", o.check_samples, "extra random sample triples")
        ->capture_default_str();
    pcheck->add_option("--seed", o.seed, "sampling seed")->capture_default_str();

    CLI::App* quantize =
        app.add_subcommand("quantize", "lift, star product, and associativity report");
    add_cone(quantize);
    quantize->add_option("--poisson", o.poisson_path, "Poisson structure JSON file")->required();
    quantize->add_option("--order", o.order, "truncation order")->capture_default_str();
    quantize->add_option("--samples", o.star_samples, "random sample triples per check")
        ->capture_default_str();
    quantize->add_option("--seed", o.seed, "sampling seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Cone c = cone_from_json(load_json(o.cone_path));
        Json report;
        if (analyze->parsed()) {
            report = cmd_analyze(c);
        } else if (hilbert->parsed()) {
            report = cmd_hilbert(c);
        } else if (t1->parsed()) {
            report = cmd_t1(c, o);
        } else if (scan->parsed()) {
            report = cmd_scan(c, o);
        } else if (oracle->parsed()) {
            report = cmd_oracle_compare(c, o);
        } else {
            PoissonStructure p = poisson_from_json(load_json(o.poisson_path));
            report = pcheck->parsed() ? cmd_poisson_check(c, p, o) : cmd_quantize(c, p, o);
        }
        emit(report, o.output);
        return 0;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = e.what();
        try {
            emit(err, o.output);
        } catch (const std::exception&) {
            std::cerr << err.dump() << "\n";
        }
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
