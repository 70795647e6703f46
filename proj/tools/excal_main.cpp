#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "excal/errors.hpp"
#include "excal/functor_ops.hpp"
#include "excal/limits.hpp"
#include "excal/polyfunctors.hpp"
#include "excal/random_functors.hpp"
#include "excal/spec_io.hpp"

using nlohmann::json;

namespace {

// Prints the machine block, mirrors it to --out when given, and turns the
// verdict into the exit code (0 = holds).
int finish(const json& result, bool holds, const std::string& out_path) {
    std::cout << "result-json:\n" << result.dump(2) << "\n";
    if (!out_path.empty()) excal::write_text_file(out_path, result.dump(2) + "\n");
    return holds ? 0 : 1;
}

std::vector<int> parse_block_list(const std::string& text) {
    std::vector<int> blocks;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            const int v = std::stoi(piece);
            if (v < 1) throw std::invalid_argument("nonpositive");
            blocks.push_back(v);
        } catch (const std::exception&) {
            throw excal::ParseError("--spec expects comma-separated positive block sizes, got '" +
                                    text + "'");
        }
    }
    if (blocks.empty()) throw excal::ParseError("--spec expects at least one block");
    return blocks;
}

struct Options {
    std::string path;
    std::string out;
    std::string ring = "Z";
    std::string blocks;
    int ell = 3;
    int n = 0;
    int d = 1;
    int cap = 0;
    int height = 2;
    long p = 5;
    long seed = 1;
    int max_size = 4;
    int max_rank = 3;
    int degree_cap = -1;
};

int cmd_validate(const Options& opt) {
    const excal::FunctorSpec spec = excal::read_functor_spec_file(opt.path);
    bool holds = true;
    std::string detail;
    std::vector<int> ranks;
    try {
        const excal::FunctorData g = excal::functor_from_spec(spec);
        const excal::FunctorCheck check = excal::validate_functor(g);
        holds = check.ok;
        detail = check.detail;
        ranks = g.ranks();
    } catch (const excal::NotAFunctor& bad) {
        holds = false;
        detail = bad.what();
    }
    std::cout << "spec: kind " << spec.kind << " over " << spec.ring.name() << ", sizes 0.."
              << spec.max_size << "\n";
    if (holds)
        std::cout << "functor laws hold\n";
    else
        std::cout << "functor laws violated: " << detail << "\n";
    json result;
    result["command"] = "validate";
    result["claim"] = "identity and composition laws hold for every action matrix";
    result["ring"] = spec.ring.name();
    result["kind"] = spec.kind;
    result["holds"] = holds;
    result["detail"] = detail;
    result["ranks"] = ranks;
    return finish(result, holds, opt.out);
}

int cmd_degree(const Options& opt) {
    const excal::FunctorData g = excal::functor_from_spec(excal::read_functor_spec_file(opt.path));
    const int d = excal::degree(g);
    std::cout << "degree " << d << " (sizes 0.." << g.max_size() << ")\n";
    json result;
    result["command"] = "degree";
    result["claim"] = "largest size with nonvanishing primitive part";
    result["ring"] = g.ring().name();
    result["degree"] = d;
    result["ranks"] = g.ranks();
    return finish(result, true, opt.out);
}

int cmd_prim(const Options& opt) {
    const excal::FunctorData g = excal::functor_from_spec(excal::read_functor_spec_file(opt.path));
    const excal::PrimData p = excal::prim(g);
    std::cout << "primitive ranks:";
    for (int m = 0; m <= g.max_size(); ++m) std::cout << " " << p.functor.rank(m);
    std::cout << "\n";
    json result;
    result["command"] = "prim";
    result["claim"] = "ranks of the joint kernels of the retractions to proper subsets";
    result["ring"] = g.ring().name();
    result["prim_ranks"] = p.functor.ranks();
    result["ranks"] = g.ranks();
    return finish(result, true, opt.out);
}

int cmd_limit(const Options& opt) {
    const excal::FunctorData g = excal::functor_from_spec(excal::read_functor_spec_file(opt.path));
    const excal::LimitResult lim = excal::limit_over_surjections(g, opt.ell);
    const bool square = lim.comparison.rows() == lim.comparison.cols();
    const bool iso = square && excal::is_invertible(lim.comparison);
    std::cout << "limit over surjections between sizes 1.." << opt.ell << ": rank " << lim.rank()
              << ", basepoint value rank " << g.rank(0) << "\n";
    std::cout << (iso ? "comparison is an isomorphism\n" : "comparison is not an isomorphism\n");
    json result;
    result["command"] = "limit";
    result["claim"] =
        "the comparison from the truncated surjection limit to the basepoint value is an "
        "isomorphism";
    result["ring"] = g.ring().name();
    result["ell"] = opt.ell;
    result["limit_rank"] = lim.rank();
    result["target_rank"] = g.rank(0);
    result["iso"] = iso;
    return finish(result, iso, opt.out);
}

int cmd_excisive(const Options& opt) {
    const excal::FunctorData g = excal::functor_from_spec(excal::read_functor_spec_file(opt.path));
    const bool holds = excal::is_n_excisive(g, opt.n);
    std::cout << (holds ? "" : "not ") << opt.n << "-excisive\n";
    json result;
    result["command"] = "excisive";
    result["claim"] = "block hypercubes with more than n blocks land weakly cartesian";
    result["ring"] = g.ring().name();
    result["n"] = opt.n;
    result["holds"] = holds;
    return finish(result, holds, opt.out);
}

int cmd_paring(const Options& opt) {
    const excal::FunctorData g = excal::functor_from_spec(excal::read_functor_spec_file(opt.path));
    const excal::HypercubeSpec spec{parse_block_list(opt.blocks)};
    const excal::TruncatedCubeLimit t = excal::truncated_cube_limit(g, spec, opt.height);
    std::cout << "cube " << spec.to_string() << ", vertices of height <= " << opt.height
              << ": limit rank " << t.limit.rank() << ", full-wedge rank "
              << g.rank(spec.total_size()) << "\n";
    std::cout << (t.iso ? "comparison is an isomorphism\n" : "comparison is not an isomorphism\n");
    json result;
    result["command"] = "paring";
    result["claim"] = "the height-limited cube limit reconstructs the full-wedge value";
    result["ring"] = g.ring().name();
    result["spec"] = spec.block_sizes;
    result["height"] = opt.height;
    result["limit_rank"] = t.limit.rank();
    result["target_rank"] = g.rank(spec.total_size());
    result["iso"] = t.iso;
    return finish(result, t.iso, opt.out);
}

int cmd_reconstruct(const Options& opt) {
    const excal::FunctorData g = excal::functor_from_spec(excal::read_functor_spec_file(opt.path));
    const excal::ReconstructionCheck r = excal::cube_reconstruct_certified(g, opt.n);
    std::cout << "skeleton rebuild at size " << opt.n << ": rank " << r.reconstruction.rank
              << ", value rank " << g.rank(opt.n) << "\n";
    std::cout << (r.iso ? "comparison is an isomorphism\n" : "comparison is not an isomorphism\n");
    json result;
    result["command"] = "reconstruct";
    result["claim"] = "the basepoint-singleton-pair skeleton rebuilds the value at size n";
    result["ring"] = g.ring().name();
    result["n"] = opt.n;
    result["rank"] = r.reconstruction.rank;
    result["target_rank"] = g.rank(opt.n);
    result["iso"] = r.iso;
    return finish(result, r.iso, opt.out);
}

int cmd_counterexample(const Options& opt) {
    const excal::RingSpec ring = excal::RingSpec::from_name(opt.ring);
    const excal::FunctorData g = excal::ind_constant(ring, opt.ell);
    const excal::ExactMatrix family = excal::counterexample_family(ring, opt.ell);
    const excal::LimitResult lim = excal::limit_over_surjections(g, opt.ell);
    const auto coords = excal::solve(lim.basis, family);
    const bool in_limit = coords.has_value();
    const bool nonzero = !family.is_zero();
    const bool to_zero =
        lim.comparison.rows() == 0 ||
        (in_limit && excal::multiply(lim.comparison, *coords).is_zero());
    const bool holds = in_limit && nonzero && to_zero && lim.rank() >= 1;
    std::cout << "family with a unit on each full-subset coordinate, sizes 1.." << opt.ell
              << " over " << ring.name() << "\n";
    std::cout << "compatible with every surjection: " << (in_limit ? "yes" : "no")
              << "; nonzero: " << (nonzero ? "yes" : "no")
              << "; comparison sends it to zero: " << (to_zero ? "yes" : "no") << "\n";
    std::cout << (holds ? "comparison not injective\n" : "no counterexample produced\n");
    json result;
    result["command"] = "counterexample";
    result["claim"] = "the comparison out of the truncated limit fails to be injective";
    result["ring"] = ring.name();
    result["ell"] = opt.ell;
    result["limit_rank"] = lim.rank();
    result["family_in_limit"] = in_limit;
    result["family_nonzero"] = nonzero;
    result["maps_to_zero"] = to_zero;
    result["holds"] = holds;
    return finish(result, holds, opt.out);
}

int cmd_sympoly(const Options& opt) {
    const excal::RingSpec ring = excal::RingSpec::from_name(opt.ring);
    const excal::SymPolyVerdict v = excal::sym_poly_implication(ring, opt.d, opt.cap);
    std::cout << "symmetric degree-" << opt.d << " polynomials in x, y, z over " << ring.name()
              << " with symmetric fold: space rank " << v.space_rank << "\n";
    if (v.zero_map) {
        std::cout << "diagonal map is zero on that space\n";
    } else {
        std::cout << "diagonal map is nonzero; witness:\n";
        std::cout << "  f        = " << v.witness->to_string() << "\n";
        std::cout << "  f(x,x,y) = " << v.witness_folded->to_string() << "\n";
        std::cout << "  f(x,x,x) = " << v.witness_diagonal->to_string() << "\n";
    }
    json result;
    result["command"] = "sympoly";
    result["claim"] =
        "symmetric homogeneous polynomials with symmetric fold have vanishing diagonal";
    result["ring"] = ring.name();
    result["d"] = opt.d;
    result["space_rank"] = v.space_rank;
    result["diagonal_zero"] = v.zero_map;
    if (v.witness) {
        result["witness"] = v.witness->to_string();
        result["witness_folded"] = v.witness_folded->to_string();
        result["witness_diagonal"] = v.witness_diagonal->to_string();
    }
    return finish(result, v.zero_map, opt.out);
}

int cmd_charp(const Options& opt) {
    const excal::CharPWitness w = excal::charp_counterexample(opt.p);
    std::cout << "f        = " << w.f.to_string() << "\n";
    std::cout << "f(x,x,y) = " << w.folded.to_string() << "\n";
    std::cout << "f(x,x,x) = " << w.diagonal.to_string() << "\n";
    std::cout << "fold is symmetric while the diagonal is nonzero: the implication fails over "
              << w.f.ring.name() << "\n";
    json result;
    result["command"] = "charp";
    result["claim"] =
        "an explicit symmetric polynomial has symmetric fold and nonzero diagonal in "
        "characteristic p";
    result["ring"] = w.f.ring.name();
    result["p"] = opt.p;
    result["f"] = w.f.to_string();
    result["folded"] = w.folded.to_string();
    result["diagonal"] = w.diagonal.to_string();
    return finish(result, true, opt.out);
}

int cmd_gen(const Options& opt) {
    const excal::RingSpec ring = excal::RingSpec::from_name(opt.ring);
    excal::RandomFunctorOptions options;
    options.max_size = opt.max_size;
    options.max_rank = opt.max_rank;
    options.degree_cap = opt.degree_cap;
    const excal::SurjFunctorData f =
        excal::random_surj_functor(ring, static_cast<unsigned long>(opt.seed), options);
    const std::string text = excal::serialize_functor_spec(excal::spec_from_surj_functor(f));
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        excal::write_text_file(opt.out, text);
        std::cout << "wrote " << opt.out << " (kind ind, sizes 0.." << opt.max_size << " over "
                  << ring.name() << ", seed " << opt.seed << ")\n";
    }
    return 0;
}

int cmd_canon(const Options& opt) {
    const std::string text = excal::serialize_functor_spec(excal::read_functor_spec_file(opt.path));
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        excal::write_text_file(opt.out, text);
        std::cout << "wrote " << opt.out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact limits, excision, and reconstruction for functors on pointed finite sets"};
    app.require_subcommand(1);
    Options opt;
    int exit_code = 0;

    const auto add_spec_path = [&](CLI::App* sub) {
        sub->add_option("path", opt.path, "functor spec file")->required();
    };
    const auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "write the JSON result block to this file");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the functor laws for a spec file");
    add_spec_path(validate);
    add_out(validate);
    validate->callback([&] { exit_code = cmd_validate(opt); });

    CLI::App* degree = app.add_subcommand("degree", "degree of the functor in a spec file");
    add_spec_path(degree);
    add_out(degree);
    degree->callback([&] { exit_code = cmd_degree(opt); });

    CLI::App* prim = app.add_subcommand("prim", "primitive ranks of the functor in a spec file");
    add_spec_path(prim);
    add_out(prim);
    prim->callback([&] { exit_code = cmd_prim(opt); });

    CLI::App* limit =
        app.add_subcommand("limit", "truncated limit over surjections and its comparison map");
    add_spec_path(limit);
    limit->add_option("--ell", opt.ell, "largest size kept in the surjection category")
        ->required();
    add_out(limit);
    limit->callback([&] { exit_code = cmd_limit(opt); });

    CLI::App* excisive = app.add_subcommand("excisive", "weak cartesianness of block hypercubes");
    add_spec_path(excisive);
    excisive->add_option("--n", opt.n, "excision degree to test")->required();
    add_out(excisive);
    excisive->callback([&] { exit_code = cmd_excisive(opt); });

    CLI::App* paring = app.add_subcommand("paring", "cube limit from vertices of bounded height");
    add_spec_path(paring);
    paring->add_option("--spec", opt.blocks, "comma-separated block sizes, e.g. 1,1,1")
        ->required();
    paring->add_option("--height", opt.height, "largest number of blocks kept")->required();
    add_out(paring);
    paring->callback([&] { exit_code = cmd_paring(opt); });

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "rebuild a value from the pair skeleton");
    add_spec_path(reconstruct);
    reconstruct->add_option("--n", opt.n, "size to rebuild")->required();
    add_out(reconstruct);
    reconstruct->callback([&] { exit_code = cmd_reconstruct(opt); });

    CLI::App* counterexample = app.add_subcommand(
        "counterexample", "nonzero limit family that the basepoint comparison kills");
    counterexample->add_option("--ell", opt.ell, "largest size kept")->required();
    counterexample->add_option("--ring", opt.ring, "Q, Z, or Fp:<p> (default Z)");
    add_out(counterexample);
    counterexample->callback([&] { exit_code = cmd_counterexample(opt); });

    CLI::App* sympoly = app.add_subcommand(
        "sympoly", "does a symmetric fold force the diagonal of a symmetric polynomial to vanish");
    sympoly->add_option("--ring", opt.ring, "Q or Fp:<p>")->required();
    sympoly->add_option("--d", opt.d, "homogeneous degree")->required();
    sympoly->add_option("--cap", opt.cap, "override the degree cap");
    add_out(sympoly);
    sympoly->callback([&] { exit_code = cmd_sympoly(opt); });

    CLI::App* charp = app.add_subcommand(
        "charp", "explicit characteristic-p failure of the fold-symmetry implication");
    charp->add_option("--p", opt.p, "prime, at least 5")->required();
    add_out(charp);
    charp->callback([&] { exit_code = cmd_charp(opt); });

    CLI::App* gen = app.add_subcommand("gen", "emit a random ind-kind spec file");
    gen->add_option("--seed", opt.seed, "random seed")->required();
    gen->add_option("--ring", opt.ring, "Q, Z, or Fp:<p> (default Z)");
    gen->add_option("--N", opt.max_size, "largest size (default 4)");
    gen->add_option("--max-rank", opt.max_rank, "largest building-block rank (default 3)");
    gen->add_option("--degree-cap", opt.degree_cap, "truncate supports above this size");
    gen->add_option("--out", opt.out, "write the generated file here instead of stdout");
    gen->callback([&] { exit_code = cmd_gen(opt); });

    CLI::App* canon = app.add_subcommand("canon", "rewrite a spec file in canonical form");
    add_spec_path(canon);
    canon->add_option("--out", opt.out, "write the canonical spec here instead of stdout");
    canon->callback([&] { exit_code = cmd_canon(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const excal::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
