#include "excal/polyfunctors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "excal/errors.hpp"
#include "excal/functor_ops.hpp"
#include "excal/limits.hpp"

namespace excal {

int Monomial::degree() const {
    int d = 0;
    for (const auto& [key, e] : exponents) d += e;
    return d;
}

std::vector<int> Monomial::slots() const {
    std::vector<int> out;
    for (const auto& [key, e] : exponents) out.push_back(key.second);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Monomial::to_string() const {
    if (exponents.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, e] : exponents) {
        if (!first) os << " ";
        first = false;
        os << "x_{" << key.first << "," << key.second << "}";
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

std::vector<std::vector<int>> monomial_exponents(int vars, int d) {
    if (vars < 0 || d < 0) throw PreconditionViolated("monomial_exponents: negative input");
    std::vector<std::vector<int>> out;
    if (vars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(static_cast<size_t>(vars), 0);
    std::function<void(int, int)> place = [&](int pos, int left) {
        if (pos == vars - 1) {
            cur[static_cast<size_t>(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[static_cast<size_t>(pos)] = e;
            place(pos + 1, left - e);
        }
    };
    place(0, d);
    return out;
}

namespace {

// Exponents of the substituted monomial under x_{c,i} -> x_{c,f(i)}, laid
// out block-major over the target size; nullopt when a used slot hits the
// basepoint.
std::optional<std::vector<int>> substitute_exponents(const std::vector<int>& e, int n,
                                                     const PointedMap& f) {
    const int m = f.source_size();
    const int t = f.target_size();
    std::vector<int> out(static_cast<size_t>(n) * static_cast<size_t>(t), 0);
    for (int c = 1; c <= n; ++c) {
        for (int i = 1; i <= m; ++i) {
            const int exp = e[static_cast<size_t>(c - 1) * static_cast<size_t>(m) +
                             static_cast<size_t>(i - 1)];
            if (exp == 0) continue;
            const int j = f.image_of(i);
            if (j == 0) return std::nullopt;
            out[static_cast<size_t>(c - 1) * static_cast<size_t>(t) +
                static_cast<size_t>(j - 1)] += exp;
        }
    }
    return out;
}

class polynomial_action_provider final : public ActionProvider {
  public:
    polynomial_action_provider(RingSpec ring, int n, int d)
        : ring_(std::move(ring)), n_(n), d_(d) {}

    ExactMatrix compute(const PointedMap& f) const override {
        const auto source = monomial_exponents(n_ * f.source_size(), d_);
        const auto target = monomial_exponents(n_ * f.target_size(), d_);
        std::map<std::vector<int>, int> row_of;
        for (int r = 0; r < static_cast<int>(target.size()); ++r)
            row_of.emplace(target[static_cast<size_t>(r)], r);
        ExactMatrix a(ring_, static_cast<int>(target.size()), static_cast<int>(source.size()));
        for (int j = 0; j < static_cast<int>(source.size()); ++j) {
            const auto image = substitute_exponents(source[static_cast<size_t>(j)], n_, f);
            if (image) a.set(row_of.at(*image), j, 1);
        }
        return a;
    }

  private:
    RingSpec ring_;
    int n_;
    int d_;
};

Monomial monomial_from_exponents(const std::vector<int>& e, int n, int m) {
    Monomial mono;
    for (int c = 1; c <= n; ++c) {
        for (int i = 1; i <= m; ++i) {
            const int exp = e[static_cast<size_t>(c - 1) * static_cast<size_t>(m) +
                             static_cast<size_t>(i - 1)];
            if (exp > 0) mono.exponents[{c, i}] = exp;
        }
    }
    return mono;
}

std::string block_set_name(unsigned mask) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int b = 0; mask >> b; ++b) {
        if (!(mask >> b & 1u)) continue;
        if (!first) os << ",";
        first = false;
        os << b + 1;
    }
    os << "}";
    return os.str();
}

}  // namespace

FunctorData build_P(const RingSpec& ring, int n, int d, int max_size) {
    if (n < 1 || d < 0) throw PreconditionViolated("build_P: need n >= 1 and d >= 0");
    if (max_size < 0 || max_size > kSizeBudget)
        throw BudgetExceeded("build_P: max_size outside 0.." + std::to_string(kSizeBudget));
    std::vector<int> ranks;
    for (int m = 0; m <= max_size; ++m)
        ranks.push_back(static_cast<int>(monomial_exponents(n * m, d).size()));
    return FunctorData(ring, max_size, std::move(ranks),
                       std::make_shared<polynomial_action_provider>(ring, n, d));
}

FunctorData build_P_le(const RingSpec& ring, int n, int d, int max_size) {
    if (d < 0) throw PreconditionViolated("build_P_le: need d >= 0");
    FunctorData g = build_P(ring, n, 0, max_size);
    for (int e = 1; e <= d; ++e) g = direct_sum(g, build_P(ring, n, e, max_size));
    return g;
}

OrbitDecomposition monomial_orbit_decomposition(const RingSpec& ring, int n, int d,
                                                const HypercubeSpec& spec) {
    if (n < 1 || d < 0)
        throw PreconditionViolated("monomial_orbit_decomposition: need n >= 1 and d >= 0");
    const HypercubeDiagram cube(spec);
    const int total = spec.total_size();
    const int blocks = spec.block_count();
    const unsigned full = cube.full_mask();
    const FunctorData g = build_P(ring, n, d, total);

    std::vector<int> block_of(static_cast<size_t>(total) + 1, 0);
    {
        int slot = 0;
        for (int b = 1; b <= blocks; ++b)
            for (int k = 0; k < spec.block_sizes[static_cast<size_t>(b - 1)]; ++k)
                block_of[static_cast<size_t>(++slot)] = b;
    }

    const auto basis = monomial_exponents(n * total, d);
    const int count = static_cast<int>(basis.size());

    // Per-vertex monomial bases and the position of each full-wedge monomial
    // after collapsing to the vertex (-1 when it dies).
    std::vector<std::map<std::vector<int>, int>> row_of(full + 1);
    for (unsigned mask = 0; mask <= full; ++mask) {
        const auto vbasis = monomial_exponents(n * cube.vertex_size(mask), d);
        for (int r = 0; r < static_cast<int>(vbasis.size()); ++r)
            row_of[mask].emplace(vbasis[static_cast<size_t>(r)], r);
    }
    std::vector<std::vector<int>> rep(static_cast<size_t>(count),
                                      std::vector<int>(full + 1, -1));
    std::vector<unsigned> support_mask(static_cast<size_t>(count), 0);
    for (int j = 0; j < count; ++j) {
        const auto& e = basis[static_cast<size_t>(j)];
        for (int c = 1; c <= n; ++c)
            for (int i = 1; i <= total; ++i)
                if (e[static_cast<size_t>(c - 1) * static_cast<size_t>(total) +
                      static_cast<size_t>(i - 1)] > 0)
                    support_mask[static_cast<size_t>(j)] |= 1u << (block_of[static_cast<size_t>(i)] - 1);
        for (unsigned mask = 0; mask <= full; ++mask) {
            const auto image = substitute_exponents(e, n, cube.arrow(full, mask));
            const bool expect = (mask & support_mask[static_cast<size_t>(j)]) ==
                                support_mask[static_cast<size_t>(j)];
            if (image.has_value() != expect)
                throw std::logic_error("monomial_orbit_decomposition: support mismatch");
            if (image) rep[static_cast<size_t>(j)][mask] = row_of[mask].at(*image);
        }
    }

    OrbitDecomposition out{n, d, spec, {}, true, true, true, true, true, false, ""};
    out.weakly_cartesian = is_weakly_cartesian(g, spec);

    // The survivors at each vertex must enumerate its basis exactly once;
    // together with the column checks below this certifies that the diagram
    // splits as the direct sum of the orbits.
    for (unsigned mask = 0; mask <= full; ++mask) {
        std::vector<char> seen(static_cast<size_t>(g.rank(cube.vertex_size(mask))), 0);
        int alive = 0;
        for (int j = 0; j < count; ++j) {
            const int r = rep[static_cast<size_t>(j)][mask];
            if (r < 0) continue;
            if (seen[static_cast<size_t>(r)])
                throw std::logic_error("monomial_orbit_decomposition: collapse not injective");
            seen[static_cast<size_t>(r)] = 1;
            ++alive;
        }
        if (alive != g.rank(cube.vertex_size(mask))) out.reassembles = false;
    }

    for (unsigned from = 1; from <= full; ++from) {
        for (unsigned dst = (from - 1) & from;; dst = (dst - 1) & from) {
            const ExactMatrix& a = g.action(cube.arrow(from, dst));
            for (int j = 0; j < count; ++j) {
                const int col = rep[static_cast<size_t>(j)][from];
                if (col < 0) continue;
                const int want = rep[static_cast<size_t>(j)][dst];
                for (int r = 0; r < a.rows(); ++r) {
                    const bool hit = !scalar_is_zero(a.at(r, col));
                    if (hit != (r == want)) out.identity_transitions = false;
                    if (hit && r == want && a.at(r, col) != 1) out.identity_transitions = false;
                }
            }
            if (dst == 0) break;
        }
    }

    for (int j = 0; j < count; ++j) {
        MonomialOrbit orbit;
        orbit.monomial = monomial_from_exponents(basis[static_cast<size_t>(j)], n, total);
        const unsigned sup = support_mask[static_cast<size_t>(j)];
        for (int b = 1; b <= blocks; ++b)
            if (sup >> (b - 1) & 1u) orbit.support.push_back(b);
        orbit.present.resize(full + 1, 0);
        for (unsigned mask = 0; mask <= full; ++mask)
            orbit.present[mask] = rep[static_cast<size_t>(j)][mask] >= 0;
        if (static_cast<int>(orbit.support.size()) >= blocks) out.supports_proper = false;

        // Two-face at base A dropping bits b1, b2: with identity transitions
        // the pullback of the three lower vertices has rank c ? 1 : a + b,
        // and the face is cartesian when that equals the corner rank.
        orbit.squares_cartesian = true;
        for (unsigned base = 0; base <= full; ++base) {
            if ((base & sup) != sup) continue;  // corner dead, face all zero
            for (int b1 = 0; b1 < blocks; ++b1) {
                if (!(base >> b1 & 1u)) continue;
                for (int b2 = b1 + 1; b2 < blocks; ++b2) {
                    if (!(base >> b2 & 1u)) continue;
                    const int a_ = orbit.present[base ^ 1u << b1];
                    const int b_ = orbit.present[base ^ 1u << b2];
                    const int c_ = orbit.present[base ^ (1u << b1 | 1u << b2)];
                    const int pullback = c_ ? 1 : a_ + b_;
                    if (pullback == 1) continue;
                    orbit.squares_cartesian = false;
                    if (out.failing_square.empty()) {
                        std::ostringstream os;
                        os << "orbit " << orbit.monomial.to_string() << ": face at "
                           << block_set_name(base) << " dropping blocks " << b1 + 1 << " and "
                           << b2 + 1 << " keeps the corner and kills the other three vertices";
                        out.failing_square = os.str();
                    }
                }
            }
        }
        if (!orbit.squares_cartesian) out.all_squares_cartesian = false;

        // Faces of dimension > d: the surviving region of the punctured face
        // is the interval from (A \ D) | support up to A; a minimum below A
        // makes its limit a single copy of the ground ring, matching the
        // corner.  |D| > d >= |support| rules the degenerate case out, and
        // the loop re-checks that instead of assuming it.
        orbit.high_faces_weakly_cartesian = true;
        for (unsigned base = 0; base <= full; ++base) {
            if ((base & sup) != sup) continue;
            for (unsigned drop = base; drop != 0; drop = (drop - 1) & base) {
                if (std::popcount(drop) <= d) continue;
                const unsigned least = (base & ~drop) | sup;
                if (least == base) orbit.high_faces_weakly_cartesian = false;
            }
        }
        if (!orbit.high_faces_weakly_cartesian) out.high_faces_weakly_cartesian = false;

        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

Scalar SymPoly::coefficient(const Monomial& m) const {
    const auto it = coefficients.find(m);
    return it == coefficients.end() ? Scalar(0) : it->second;
}

void SymPoly::add_term(const std::vector<int>& exps, const Scalar& c) {
    if (static_cast<int>(exps.size()) != vars)
        throw DimensionMismatch("SymPoly::add_term: exponent count vs variable count");
    int total = 0;
    Monomial m;
    for (int i = 1; i <= vars; ++i) {
        const int e = exps[static_cast<size_t>(i - 1)];
        if (e < 0) throw PreconditionViolated("SymPoly::add_term: negative exponent");
        total += e;
        if (e > 0) m.exponents[{1, i}] = e;
    }
    if (total != degree) throw PreconditionViolated("SymPoly::add_term: inhomogeneous term");
    Scalar next = ring_add(ring, coefficient(m), c);
    if (scalar_is_zero(next))
        coefficients.erase(m);
    else
        coefficients[m] = std::move(next);
}

SymPoly SymPoly::substitute(const std::vector<int>& images, int target_vars) const {
    if (static_cast<int>(images.size()) != vars)
        throw DimensionMismatch("SymPoly::substitute: image count vs variable count");
    for (const int im : images)
        if (im < 1 || im > target_vars)
            throw PreconditionViolated("SymPoly::substitute: image out of range");
    SymPoly out{ring, target_vars, degree, {}};
    for (const auto& [m, c] : coefficients) {
        std::vector<int> exps(static_cast<size_t>(target_vars), 0);
        for (const auto& [key, e] : m.exponents)
            exps[static_cast<size_t>(images[static_cast<size_t>(key.second - 1)] - 1)] += e;
        out.add_term(exps, c);
    }
    return out;
}

bool SymPoly::is_symmetric() const {
    std::vector<int> perm(static_cast<size_t>(vars));
    for (int i = 0; i < vars; ++i) perm[static_cast<size_t>(i)] = i + 1;
    do {
        if (substitute(perm, vars).coefficients != coefficients) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

std::string SymPoly::to_string() const {
    if (coefficients.empty()) return "0";
    static const char* kLetters = "xyzw";
    std::vector<std::pair<std::vector<int>, Scalar>> terms;
    for (const auto& [m, c] : coefficients) {
        std::vector<int> exps(static_cast<size_t>(vars), 0);
        for (const auto& [key, e] : m.exponents) exps[static_cast<size_t>(key.second - 1)] = e;
        terms.emplace_back(std::move(exps), c);
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::ostringstream os;
    bool first = true;
    for (const auto& [exps, c] : terms) {
        if (!first) os << " + ";
        first = false;
        std::ostringstream vars_os;
        for (int i = 0; i < vars; ++i) {
            const int e = exps[static_cast<size_t>(i)];
            if (e == 0) continue;
            if (vars < 5)
                vars_os << kLetters[i];
            else
                vars_os << "x_" << i + 1;
            if (e > 1) vars_os << "^" << e;
        }
        const std::string body = vars_os.str();
        if (body.empty())
            os << c;
        else if (c == 1)
            os << body;
        else
            os << c << body;
    }
    return os.str();
}

SymPolyVerdict sym_poly_implication(const RingSpec& ring, int d, int cap) {
    if (!ring.is_field()) throw WrongRing("sym_poly_implication: need Q or a prime field");
    if (d < 1) throw PreconditionViolated("sym_poly_implication: need d >= 1");
    const long p = ring.characteristic();
    const long bound = cap > 0 ? cap : (p == 0 ? 12 : p + 3);
    if (d > bound)
        throw BudgetExceeded("sym_poly_implication: degree above cap " + std::to_string(bound));

    // Symmetric polynomials in three variables are spanned by the orbit sums
    // of the partitions of d into at most three parts.
    std::vector<std::vector<std::array<int, 3>>> orbits;
    for (int a = d; a >= 1; --a) {
        for (int b = std::min(a, d - a); b >= 0; --b) {
            const int c = d - a - b;
            if (c < 0 || c > b) continue;
            std::set<std::array<int, 3>> distinct;
            std::array<int, 3> part{a, b, c};
            std::sort(part.begin(), part.end());
            do {
                distinct.insert(part);
            } while (std::next_permutation(part.begin(), part.end()));
            orbits.emplace_back(distinct.begin(), distinct.end());
        }
    }
    const int k = static_cast<int>(orbits.size());

    const auto orbit_poly = [&](int idx) {
        SymPoly f{ring, 3, d, {}};
        for (const auto& t : orbits[static_cast<size_t>(idx)])
            f.add_term({t[0], t[1], t[2]}, Scalar(1));
        return f;
    };

    // Rows: coefficients of f(x,x,y) - f(x,y,y) on the two-variable
    // monomials; the kernel is the constrained space in orbit coordinates.
    ExactMatrix constraints(ring, d + 1, k);
    for (int idx = 0; idx < k; ++idx) {
        const SymPoly f = orbit_poly(idx);
        const SymPoly left = f.substitute({1, 1, 2}, 2);
        const SymPoly right = f.substitute({1, 2, 2}, 2);
        for (int a = 0; a <= d; ++a) {
            Monomial m;
            if (a > 0) m.exponents[{1, 1}] = a;
            if (d - a > 0) m.exponents[{1, 2}] = d - a;
            constraints.set(a, idx,
                            ring_sub(ring, left.coefficient(m), right.coefficient(m)));
        }
    }
    const ExactMatrix space = kernel_basis(constraints);

    // Diagonal functional in orbit coordinates: each orbit sum restricts to
    // (orbit size) * x^d on the diagonal.
    ExactMatrix diag_row(ring, 1, k);
    for (int idx = 0; idx < k; ++idx)
        diag_row.set(0, idx,
                     scalar_from_long(ring, static_cast<long>(orbits[static_cast<size_t>(idx)].size())));
    const ExactMatrix diag_values = multiply(diag_row, space);

    SymPolyVerdict verdict;
    verdict.space_rank = space.cols();
    verdict.zero_map = diag_values.is_zero();
    if (!verdict.zero_map) {
        int pick = -1;
        for (int j = 0; j < diag_values.cols(); ++j)
            if (!scalar_is_zero(diag_values.at(0, j))) pick = j;
        SymPoly f{ring, 3, d, {}};
        for (int idx = 0; idx < k; ++idx) {
            const Scalar& c = space.at(idx, pick);
            if (scalar_is_zero(c)) continue;
            for (const auto& t : orbits[static_cast<size_t>(idx)]) f.add_term({t[0], t[1], t[2]}, c);
        }
        if (!f.is_symmetric() ||
            f.substitute({1, 1, 2}, 2).coefficients != f.substitute({1, 2, 2}, 2).coefficients)
            throw std::logic_error("sym_poly_implication: witness left the constrained space");
        SymPoly diagonal = f.substitute({1, 1, 1}, 1);
        if (diagonal.is_zero())
            throw std::logic_error("sym_poly_implication: witness diagonal vanished");
        verdict.witness_folded = f.substitute({1, 1, 2}, 2);
        verdict.witness_diagonal = std::move(diagonal);
        verdict.witness = std::move(f);
    }
    return verdict;
}

CharPWitness charp_counterexample(long p) {
    if (p < 5) throw PrimeTooSmall("charp_counterexample: need p >= 5");
    if (p > 2000) throw BudgetExceeded("charp_counterexample: prime above expansion cap 2000");
    const RingSpec ring = RingSpec::prime_field(p);
    const int dp = static_cast<int>(p);
    const Scalar half = scalar_from_long(ring, (p + 1) / 2);

    SymPoly f{ring, 3, dp, {}};
    f.add_term({dp - 2, 1, 1}, Scalar(1));
    f.add_term({1, dp - 2, 1}, Scalar(1));
    f.add_term({1, 1, dp - 2}, Scalar(1));
    for (int a = 1; a <= dp - 4; ++a) {
        // xyz * x^{p-3-a} y^a and its two cyclic rotations
        f.add_term({dp - 2 - a, a + 1, 1}, half);
        f.add_term({1, dp - 2 - a, a + 1}, half);
        f.add_term({a + 1, 1, dp - 2 - a}, half);
    }

    const SymPoly folded = f.substitute({1, 1, 2}, 2);
    SymPoly expected_fold{ring, 2, dp, {}};
    for (int a = 2; a <= dp - 2; ++a) expected_fold.add_term({a, dp - a}, Scalar(1));
    if (folded.coefficients != expected_fold.coefficients)
        throw std::logic_error("charp_counterexample: fold disagrees with the closed form");
    if (!f.is_symmetric() || !folded.is_symmetric())
        throw std::logic_error("charp_counterexample: symmetry check failed");

    const SymPoly diagonal = f.substitute({1, 1, 1}, 1);
    SymPoly expected_diag{ring, 1, dp, {}};
    expected_diag.add_term({dp}, scalar_from_long(ring, p - 3));
    if (diagonal.coefficients != expected_diag.coefficients || diagonal.is_zero())
        throw std::logic_error("charp_counterexample: diagonal disagrees with (p-3)x^p");

    return CharPWitness{std::move(f), std::move(folded), std::move(diagonal)};
}

}  // namespace excal
