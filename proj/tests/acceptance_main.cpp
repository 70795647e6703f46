// Acceptance gate: ten independently checkable properties, one pass/fail
// line each.  All counts, seeds, sizes, and the single runtime budget are
// pinned here; the exit code is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "excal/errors.hpp"
#include "excal/functor_ops.hpp"
#include "excal/limits.hpp"
#include "excal/polyfunctors.hpp"
#include "excal/random_functors.hpp"

using namespace excal;

namespace {

constexpr int kRoundTripsPerRing = 200;      // criterion 1
constexpr double kRoundTripBudgetSeconds = 120.0;
constexpr int kDegreeInstances = 100;        // criterion 2
constexpr int kVanishingSeedsPerCell = 3;    // criterion 3
constexpr int kLinearFunctors = 50;          // criterion 5
constexpr int kParingFunctors = 30;          // criterion 7
constexpr int kSkeletonFunctors = 30;        // criterion 8
constexpr int kTraceFunctors = 20;           // criterion 10

std::vector<RingSpec> three_rings() {
    return {RingSpec::rationals(), RingSpec::prime_field(5), RingSpec::integers()};
}

ExactMatrix row_slice(const ExactMatrix& m, int r0, int r1) {
    ExactMatrix out(m.ring(), r1 - r0, m.cols());
    for (int r = r0; r < r1; ++r)
        for (int c = 0; c < m.cols(); ++c) out.set(r - r0, c, m.at(r, c));
    return out;
}

ExactMatrix column_of(const ExactMatrix& m, int j) {
    ExactMatrix out(m.ring(), m.rows(), 1);
    for (int r = 0; r < m.rows(); ++r) out.set(r, 0, m.at(r, j));
    return out;
}

long binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    long out = 1;
    for (int i = 1; i <= b; ++i) out = out * (a - b + i) / i;
    return out;
}

// ---------------------------------------------------------------------------

// 1. For seeded random surjection functors F the decomposition of ind(F)
// recovers F's ranks at every size and the assembled isomorphism
// ind(prim(ind F)) -> ind(F) commutes with every surjection action exactly.
bool criterion_1(std::ostringstream& line, std::ostringstream& notes) {
    const auto start = std::chrono::steady_clock::now();
    RandomFunctorOptions opts;
    opts.max_size = 4;
    opts.max_rank = 3;
    int trips = 0;
    int ring_index = 0;
    for (const RingSpec& ring : three_rings()) {
        for (int i = 0; i < kRoundTripsPerRing; ++i) {
            const std::uint64_t seed = 1000ull * static_cast<std::uint64_t>(ring_index) + i;
            const SurjFunctorData f = random_surj_functor(ring, seed, opts);
            const FunctorData g = ind(f, opts.max_size);
            const Decomposition dec = decompose(g);
            if (dec.primitives.functor.ranks() != f.ranks()) {
                line << "prim(ind(F)) ranks differ from F at seed " << seed << " over "
                     << ring.name();
                return false;
            }
            for (int a = 1; a <= opts.max_size; ++a) {
                for (int b = 1; b <= a; ++b) {
                    for (const Surjection& s : enumerate_surjections(a, b)) {
                        const ExactMatrix lhs = multiply(g.action(s), dec.iso[a]);
                        const ExactMatrix rhs = multiply(dec.iso[b], dec.induced.action(s));
                        if (!(lhs == rhs)) {
                            line << "iso naturality fails at seed " << seed << " over "
                                 << ring.name() << " for " << s.as_pointed_map().to_string();
                            return false;
                        }
                    }
                }
            }
            ++trips;
        }
        ++ring_index;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    line << trips << " ind/prim round trips (" << kRoundTripsPerRing
         << " per ring) with exact iso naturality in " << seconds << " s (budget "
         << kRoundTripBudgetSeconds << " s)";
    if (seconds > kRoundTripBudgetSeconds) {
        notes << "runtime budget exceeded\n";
        return false;
    }
    return true;
}

// 2. The four characterisations of "degree at most n" agree on seeded random
// induced functors for every n in 0..3.
bool criterion_2(std::ostringstream& line, std::ostringstream&) {
    const std::vector<RingSpec> rings = three_rings();
    int checks = 0;
    for (int i = 0; i < kDegreeInstances; ++i) {
        RandomFunctorOptions opts;
        opts.max_size = 4;
        opts.max_rank = 2;
        opts.degree_cap = (i % 5 == 4) ? -1 : i % 5;
        const RingSpec& ring = rings[i % 3];
        const FunctorData g = random_functor(ring, 2000 + i, opts);
        for (int n = 0; n <= 3; ++n) {
            const bool a = degree_le_joint_image(g, n);
            const bool b = degree_le_kernel_meet(g, n);
            const bool c = degree_le_equalizer(g, n);
            const bool d = degree_le_primitives(g, n);
            if (a != b || a != c || a != d) {
                line << "characterisations disagree at instance " << i << ", n = " << n
                     << " over " << ring.name() << " (" << a << b << c << d << ")";
                return false;
            }
            ++checks;
        }
    }
    line << kDegreeInstances << " induced functors, n = 0..3: all four degree tests agree ("
         << checks << " agreement checks)";
    return true;
}

// 3. For degree-<= n functors the comparison from the limit truncated at
// ell = n+2 to the basepoint value is an isomorphism; over Z it is unimodular.
bool criterion_3(std::ostringstream& line, std::ostringstream&) {
    const std::vector<RingSpec> rings = {RingSpec::rationals(), RingSpec::prime_field(7),
                                         RingSpec::integers()};
    int checks = 0;
    for (const RingSpec& ring : rings) {
        for (int n = 0; n <= 3; ++n) {
            for (int s = 0; s < kVanishingSeedsPerCell; ++s) {
                RandomFunctorOptions opts;
                opts.max_size = 5;
                opts.max_rank = 2;
                opts.degree_cap = n;
                const std::uint64_t seed = 3000 + 100 * n + s;
                const FunctorData g = random_functor(ring, seed, opts);
                if (degree(g) > n) {
                    line << "generator produced degree > " << n << " at seed " << seed;
                    return false;
                }
                const int ell = n + 2;
                const VanishingVerdict v = check_vanishing(g, n, ell);
                const LimitResult lim = limit_over_surjections(g, ell);
                const bool unimodular = lim.comparison.rows() == lim.comparison.cols() &&
                                        (lim.comparison.rows() == 0 || is_invertible(lim.comparison));
                if (!v.holds || v.limit_rank != v.target_rank || !unimodular) {
                    line << "comparison not an isomorphism over " << ring.name() << ", n = " << n
                         << ", seed " << seed << ": " << v.detail;
                    return false;
                }
                ++checks;
            }
        }
    }
    line << checks << " truncated limits at ell = n+2 (n = 0..3, " << kVanishingSeedsPerCell
         << " seeds each) over Q, Fp:7, Z: comparison invertible over the ring every time";
    return true;
}

// 4. The explicit family with a unit on the full-subset coordinate of every
// size is compatible at every truncation level, dies under the comparison,
// and restricts to a nonzero family at every smaller level.
bool criterion_4(std::ostringstream& line, std::ostringstream&) {
    const RingSpec z = RingSpec::integers();
    const FunctorData g = ind_constant(z, 5);
    for (int ell = 1; ell <= 5; ++ell) {
        const ExactMatrix fam = counterexample_family(z, ell);
        const LimitResult lim = limit_over_surjections(g, ell);
        if (fam.rows() != lim.offsets[ell]) {
            line << "family layout mismatch at ell = " << ell;
            return false;
        }
        for (int a = 1; a <= ell; ++a) {
            const ExactMatrix xa = row_slice(fam, lim.offsets[a - 1], lim.offsets[a]);
            for (int b = 1; b <= a; ++b) {
                const ExactMatrix xb = row_slice(fam, lim.offsets[b - 1], lim.offsets[b]);
                for (const Surjection& s : enumerate_surjections(a, b)) {
                    if (!(multiply(g.action(s), xa) == xb)) {
                        line << "compatibility fails at ell = " << ell << " for "
                             << s.as_pointed_map().to_string();
                        return false;
                    }
                }
            }
        }
        const auto coords = solve(lim.basis, fam);
        if (!coords) {
            line << "family lies outside the computed limit at ell = " << ell;
            return false;
        }
        if (!multiply(lim.comparison, *coords).is_zero()) {
            line << "comparison does not kill the family at ell = " << ell;
            return false;
        }
        for (int ell_prime = 1; ell_prime <= ell; ++ell_prime) {
            const ExactMatrix restricted =
                multiply(restriction_map(g, ell, ell_prime), *coords);
            if (restricted.is_zero()) {
                line << "restriction to ell' = " << ell_prime << " kills the family at ell = "
                     << ell;
                return false;
            }
        }
    }
    line << "unit-on-full-subset family over Z, N = 5: compatible at every ell <= 5, killed by "
            "the comparison, nonzero under every restriction 1 <= ell' <= ell";
    return true;
}

// 5. Linear functors vanishing at the basepoint have zero truncated limit,
// so every restriction out of it is the zero map.
bool criterion_5(std::ostringstream& line, std::ostringstream&) {
    const std::vector<RingSpec> rings = three_rings();
    for (int i = 0; i < kLinearFunctors; ++i) {
        RandomFunctorOptions opts;
        opts.max_size = 3 + i % 3;
        opts.max_rank = 3;
        opts.degree_cap = 1;
        opts.allow_size_zero = false;
        const RingSpec& ring = rings[i % 3];
        const FunctorData g = random_functor(ring, 4000 + i, opts);
        if (g.rank(0) != 0 || degree(g) > 1) {
            line << "generator violated the linear/rank-0 contract at instance " << i;
            return false;
        }
        const LimitResult lim = limit_over_surjections(g, opts.max_size);
        if (lim.rank() != 0) {
            line << "limit rank " << lim.rank() << " != 0 at instance " << i << " over "
                 << ring.name() << ", N = " << opts.max_size;
            return false;
        }
        for (int ell_prime = 1; ell_prime <= opts.max_size; ++ell_prime) {
            if (restriction_map(g, opts.max_size, ell_prime).cols() != 0) {
                line << "restriction out of a rank-0 limit has columns at instance " << i;
                return false;
            }
        }
    }
    line << kLinearFunctors << " linear functors with rank 0 at the basepoint, N in {3,4,5}: "
            "truncated limit rank 0 and all restrictions out of it zero";
    return true;
}

// 6. Orbit decomposition of the polynomial functors on the all-singleton
// cube: graded certification plus the exact excision boundary.
bool criterion_6(std::ostringstream& line, std::ostringstream& notes) {
    const RingSpec q = RingSpec::rationals();
    const std::vector<std::pair<int, int>> cases = {{1, 1}, {1, 2}, {2, 2}, {1, 3}};
    for (const auto& [n, d] : cases) {
        const HypercubeSpec spec{std::vector<int>(static_cast<size_t>(d) + 1, 1)};
        const OrbitDecomposition dec = monomial_orbit_decomposition(q, n, d, spec);
        const bool graded = dec.reassembles && dec.supports_proper && dec.identity_transitions &&
                            dec.high_faces_weakly_cartesian && dec.weakly_cartesian;
        if (!graded) {
            line << "graded certification fails for (n,d) = (" << n << "," << d << ")";
            return false;
        }
        const bool literal_expected = d <= 1;  // multi-block supports appear from degree 2 on
        if (dec.all_squares_cartesian != literal_expected) {
            line << "square-face flag off for (n,d) = (" << n << "," << d << ")";
            return false;
        }
        if (!literal_expected && dec.failing_square.empty()) {
            line << "missing square-face counterexample for (n,d) = (" << n << "," << d << ")";
            return false;
        }
        const FunctorData g = build_P(q, n, d, d + 2);
        if (!is_n_excisive(g, d) || (d >= 1 && is_n_excisive(g, d - 1))) {
            line << "excision boundary off for (n,d) = (" << n << "," << d << ")";
            return false;
        }
    }
    line << "orbit decomposition for (n,d) in {(1,1),(1,2),(2,2),(1,3)} on the all-singleton "
            "cube: identity transitions, proper supports, reassembly, every face of dimension "
            "> d weakly cartesian, whole cube weakly cartesian; excision boundary exact at d";
    notes << "every two-by-two face being cartesian holds only for orbits supported in at most "
             "one block (so for d <= 1); an orbit supported in two blocks gives a face whose "
             "corner keeps the value and whose other three vertices are zero, with pullback "
             "rank 0 -- were those faces cartesian, the functor would already be 1-excisive, "
             "contradicting the exact boundary at d.  The decomposition records one such face "
             "verbatim and certifies the graded statement instead.\n";
    return true;
}

// 7. Height-2 paring: the truncated cube limit reconstructs the full-wedge
// value for quadratic functors.
bool criterion_7(std::ostringstream& line, std::ostringstream&) {
    const RingSpec q = RingSpec::rationals();
    const FunctorData p12 = build_P(q, 1, 2, 4);
    const HypercubeSpec ones4{{1, 1, 1, 1}};
    const TruncatedCubeLimit pared = truncated_cube_limit(p12, ones4, 2);
    long independent = 0;  // degree-2 exponent vectors in 4 variables, by direct loops
    for (int e1 = 0; e1 <= 2; ++e1)
        for (int e2 = 0; e2 + e1 <= 2; ++e2)
            for (int e3 = 0; e3 + e2 + e1 <= 2; ++e3) ++independent;  // e4 is determined
    if (independent != binom(5, 2) || pared.limit.rank() != independent || !pared.iso) {
        line << "quadratic one-variable-per-block paring: rank " << pared.limit.rank()
             << ", expected " << independent;
        return false;
    }
    const std::vector<RingSpec> rings = three_rings();
    const std::vector<std::vector<int>> dim3 = {{1, 1, 1}, {2, 1, 1}, {1, 1, 2}};
    const std::vector<std::vector<int>> dim4 = {{1, 1, 1, 1}, {2, 1, 1, 1}};
    for (int i = 0; i < kParingFunctors; ++i) {
        const HypercubeSpec spec{i % 2 == 0 ? dim3[(i / 2) % 3] : dim4[(i / 2) % 2]};
        RandomFunctorOptions opts;
        opts.max_size = spec.total_size();
        opts.max_rank = 2;
        opts.degree_cap = 2;
        const FunctorData g = random_functor(rings[i % 3], 5000 + i, opts);
        const TruncatedCubeLimit t = truncated_cube_limit(g, spec, 2);
        if (!t.iso) {
            line << "paring comparison not an isomorphism at instance " << i << " on cube "
                 << spec.to_string();
            return false;
        }
    }
    line << "height-2 cube limit of the quadratic functor on four singleton blocks has rank "
         << independent << " = C(5,2) (independent count) with iso comparison; "
         << kParingFunctors << " random quadratics over 3- and 4-block cubes all reconstruct";
    return true;
}

// 8. The basepoint/singleton/pair skeleton rebuilds quadratic functors at
// sizes 3 and 4; a degree-3 functor is a working negative control.
bool criterion_8(std::ostringstream& line, std::ostringstream&) {
    const std::vector<RingSpec> rings = three_rings();
    for (int i = 0; i < kSkeletonFunctors; ++i) {
        RandomFunctorOptions opts;
        opts.max_size = 4;
        opts.max_rank = 2;
        opts.degree_cap = 2;
        const FunctorData g = random_functor(rings[i % 3], 6000 + i, opts);
        for (int n = 3; n <= 4; ++n) {
            const ReconstructionCheck r = cube_reconstruct_certified(g, n);
            if (!r.iso || r.reconstruction.rank != g.rank(n)) {
                line << "skeleton rebuild fails at instance " << i << ", n = " << n << " (rank "
                     << r.reconstruction.rank << " vs " << g.rank(n) << ")";
                return false;
            }
        }
    }
    const FunctorData cubic = build_P(RingSpec::rationals(), 1, 3, 4);
    for (int n = 3; n <= 4; ++n) {
        if (cube_reconstruct_certified(cubic, n).iso) {
            line << "degree-3 negative control unexpectedly reconstructs at n = " << n;
            return false;
        }
    }
    line << kSkeletonFunctors << " quadratic functors rebuild from the height-2 skeleton at "
            "n = 3 and n = 4 with certified isomorphisms; the cubic control fails at both";
    return true;
}

// 9. Symmetric-fold implication: zero map over Q through degree 8; explicit
// characteristic-p witness with the advertised fold; nonzero witness over F5.
bool criterion_9(std::ostringstream& line, std::ostringstream& notes) {
    const RingSpec q = RingSpec::rationals();
    for (int d = 1; d <= 8; ++d) {
        const SymPolyVerdict v = sym_poly_implication(q, d);
        if (!v.zero_map) {
            line << "diagonal map nonzero over Q at degree " << d;
            return false;
        }
    }
    for (long p : {5L, 7L, 11L}) {
        const CharPWitness w = charp_counterexample(p);
        const RingSpec fp = RingSpec::prime_field(p);
        SymPoly expect_fold{fp, 2, static_cast<int>(p), {}};
        for (long a = 2; a <= p - 2; ++a)
            expect_fold.add_term({static_cast<int>(a), static_cast<int>(p - a)},
                                 scalar_from_long(fp, 1));
        SymPoly expect_diag{fp, 1, static_cast<int>(p), {}};
        expect_diag.add_term({static_cast<int>(p)}, scalar_from_long(fp, p - 3));
        const bool fold_ok = w.f.is_symmetric() && w.folded.is_symmetric() &&
                             w.folded.coefficients == expect_fold.coefficients &&
                             w.f.substitute({1, 1, 2}, 2).coefficients == w.folded.coefficients;
        const bool diag_ok = !w.diagonal.is_zero() &&
                             w.diagonal.coefficients == expect_diag.coefficients &&
                             w.f.substitute({1, 1, 1}, 1).coefficients == w.diagonal.coefficients;
        if (!fold_ok || !diag_ok) {
            line << "characteristic-" << p << " witness off: fold " << w.folded.to_string()
                 << ", diagonal " << w.diagonal.to_string();
            return false;
        }
    }
    const SymPolyVerdict v5 = sym_poly_implication(RingSpec::prime_field(5), 5);
    if (v5.zero_map || !v5.witness || v5.witness_diagonal->is_zero() ||
        !v5.witness->is_symmetric() || !v5.witness_folded->is_symmetric() ||
        !(v5.witness->substitute({1, 1, 2}, 2).coefficients == v5.witness_folded->coefficients)) {
        line << "no honest nonzero witness over Fp:5 at degree 5";
        return false;
    }
    line << "fold-symmetry implication: zero map over Q for d = 1..8; explicit witnesses for "
            "p = 5, 7, 11 with fold x^{p-2}y^2 + ... + x^2y^{p-2} and nonzero diagonal; "
            "independent nonzero witness over Fp:5 at d = 5";
    notes << "the witness diagonal is (p-3)x^p: the fold display has p-3 equal terms at y = x, "
             "so the constant sometimes quoted as p-1 cannot match its own fold; p-3 is "
             "verified here for p = 5, 7, 11 and is nonzero mod p, which is all the failure of "
             "the implication needs.\n";
    return true;
}

// 10. Coordinate trace of the vanishing argument for quadratic functors: in
// decomposition coordinates every compatible family satisfies, level by
// level, b(m, d) = b(m, d+1) and b(m, d) = 2 b(m, d+1) + (merge term from
// level m+1), which forces every nonempty-subset coordinate to vanish.
bool criterion_10(std::ostringstream& line, std::ostringstream&) {
    const RingSpec q = RingSpec::rationals();
    int families = 0;
    for (int i = 0; i < kTraceFunctors; ++i) {
        RandomFunctorOptions opts;
        opts.max_size = 4;
        opts.max_rank = 2;
        opts.degree_cap = 2;
        // The constant summand keeps the basepoint value nonzero, so every
        // instance carries at least one compatible family to trace.
        const FunctorData g =
            direct_sum(random_functor(q, 7000 + i, opts), constant_functor(q, 4, 1));
        if (degree(g) > 2) {
            line << "generator violated the quadratic contract at instance " << i;
            return false;
        }
        const Decomposition dec = decompose(g);
        const SurjFunctorData& f = dec.primitives.functor;
        if (f.rank(3) != 0 || f.rank(4) != 0) {
            line << "primitive ranks above size 2 at instance " << i;
            return false;
        }
        const LimitResult lim = limit_over_surjections(g, 4);
        if (lim.rank() < 1) {
            line << "no families to trace at instance " << i;
            return false;
        }
        for (int col = 0; col < lim.rank(); ++col) {
            const ExactMatrix fam = column_of(lim.basis, col);
            // Decomposition coordinates c_a = iso[a]^{-1} (size-a component).
            std::vector<ExactMatrix> c(5, ExactMatrix(q, 0, 0));
            for (int a = 1; a <= 4; ++a) {
                const auto ca =
                    solve(dec.iso[a], row_slice(fam, lim.offsets[a - 1], lim.offsets[a]));
                if (!ca) {
                    line << "decomposition coordinates unsolvable at instance " << i;
                    return false;
                }
                c[a] = *ca;
            }
            // Compatibility along xi: size d+1 -> d, i -> min(i, d), in the
            // induced coordinates; every relation below is a block row of it.
            for (int d = 1; d <= 3; ++d) {
                std::vector<int> images(static_cast<size_t>(d) + 1);
                for (int v = 1; v <= d + 1; ++v) images[v - 1] = std::min(v, d);
                const PointedMap xi(d + 1, d, images);
                if (!(c[d] == multiply(dec.induced.action(xi), c[d + 1]))) {
                    line << "xi compatibility fails at instance " << i;
                    return false;
                }
            }
            // Coordinates depend only on the subset's cardinality.
            const auto block = [&](int a, const std::vector<int>& subset) {
                const auto& offs = ind_offsets(f, a);
                const size_t k = subset_index(a, subset);
                return row_slice(c[a], offs[k], offs[k + 1]);
            };
            for (int a = 1; a <= 4; ++a) {
                const auto& subsets = subset_order(a);
                for (size_t k = 0; k + 1 < subsets.size(); ++k) {
                    if (subsets[k].empty()) continue;
                    for (size_t k2 = k + 1; k2 < subsets.size(); ++k2) {
                        if (subsets[k2].size() != subsets[k].size()) continue;
                        if (!(block(a, subsets[k]) == block(a, subsets[k2]))) {
                            line << "cardinality invariance fails at instance " << i
                                 << ", size " << a;
                            return false;
                        }
                    }
                }
            }
            const auto first_subset = [](int m) {
                std::vector<int> s(static_cast<size_t>(m));
                for (int v = 1; v <= m; ++v) s[v - 1] = v;
                return s;
            };
            const auto b = [&](int m, int a) { return block(a, first_subset(m)); };
            const ExactMatrix merge = f.action(Surjection(2, 1, {1, 1}));
            // Level m = 2 (merge terms come from rank-0 level-3 blocks).
            bool ok = b(2, 3) == b(2, 4);
            ok = ok && b(2, 2) == scale(b(2, 3), scalar_from_long(q, 2));
            ok = ok && b(2, 3) == scale(b(2, 4), scalar_from_long(q, 2));
            ok = ok && b(2, 2).is_zero() && b(2, 3).is_zero() && b(2, 4).is_zero();
            // Level m = 1, with the level-2 merge term written out.
            ok = ok && b(1, 2) == b(1, 3) && b(1, 3) == b(1, 4);
            for (int d = 1; d <= 3 && ok; ++d) {
                const ExactMatrix rhs =
                    add(scale(b(1, d + 1), scalar_from_long(q, 2)), multiply(merge, b(2, d + 1)));
                ok = b(1, d) == rhs;
            }
            ok = ok && b(1, 1).is_zero() && b(1, 2).is_zero() && b(1, 3).is_zero() &&
                 b(1, 4).is_zero();
            if (!ok) {
                line << "coordinate trace fails at instance " << i << ", family " << col;
                return false;
            }
            ++families;
        }
        // With every nonempty-subset coordinate forced to zero, the
        // comparison onto the basepoint value must be an isomorphism.
        const VanishingVerdict v = check_vanishing(g, 2, 4);
        if (!v.holds) {
            line << "vanishing verdict fails at instance " << i;
            return false;
        }
    }
    line << kTraceFunctors << " quadratic functors over Q, N = 4: " << families
         << " limit families traced coordinate-by-coordinate; the doubling relations force "
            "every nonempty-subset coordinate to zero and the comparison is an isomorphism";
    return true;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        bool (*run)(std::ostringstream&, std::ostringstream&);
    };
    const std::vector<Entry> entries = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
        {9, criterion_9}, {10, criterion_10},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        std::ostringstream line;
        std::ostringstream notes;
        bool ok = false;
        try {
            ok = e.run(line, notes);
        } catch (const std::exception& bad) {
            line << "exception: " << bad.what();
        }
        std::cout << "criterion " << (e.id < 10 ? " " : "") << e.id << ": "
                  << (ok ? "pass" : "FAIL") << " -- " << line.str() << "\n";
        if (!notes.str().empty()) std::cout << "    note: " << notes.str();
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
              << "\n";
    return failures;
}
