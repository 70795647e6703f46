#include "excal/random_functors.hpp"

#include <algorithm>
#include <optional>

#include "excal/errors.hpp"

namespace excal {

namespace {

long pick(std::mt19937_64& rng, long n) { return n <= 1 ? 0 : long(rng() % std::uint64_t(n)); }

int permutation_sign(const std::vector<int>& images) {
    int inversions = 0;
    for (size_t a = 0; a < images.size(); ++a)
        for (size_t b = a + 1; b < images.size(); ++b)
            if (images[a] > images[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// position of s inside the lex enumeration of surjections with its sizes
int surjection_position(const Surjection& s) {
    const auto all = enumerate_surjections(s.source_size(), s.target_size());
    auto it = std::lower_bound(all.begin(), all.end(), s.images(),
                               [](const Surjection& a, const std::vector<int>& b) {
                                   return a.images() < b;
                               });
    return int(it - all.begin());
}

}  // namespace

SurjFunctorData character_surj_functor(RingSpec ring, int max_size, int k, bool sign_twist) {
    if (k < 0 || k > max_size)
        throw PreconditionViolated("character_surj_functor: size out of range");
    std::vector<int> ranks(size_t(max_size) + 1, 0);
    ranks[size_t(k)] = 1;
    return SurjFunctorData(ring, max_size, std::move(ranks), [&](const Surjection& s) {
        if (s.source_size() != k || s.target_size() != k)
            return ExactMatrix::zero(ring, s.target_size() == k ? 1 : 0,
                                     s.source_size() == k ? 1 : 0);
        ExactMatrix a(ring, 1, 1);
        a.set(0, 0, sign_twist ? permutation_sign(s.images()) : 1);
        return a;
    });
}

SurjFunctorData corep_surj_functor(RingSpec ring, int max_size, int k) {
    if (k < 1 || k > max_size)
        throw PreconditionViolated("corep_surj_functor: size out of range");
    std::vector<int> ranks(size_t(max_size) + 1, 0);
    for (int m = 1; m <= k; ++m) ranks[size_t(m)] = int(enumerate_surjections(k, m).size());
    return SurjFunctorData(ring, max_size, std::move(ranks), [&](const Surjection& s) {
        const int m = s.source_size(), t = s.target_size();
        if (m < 1 || m > k)
            return ExactMatrix::zero(
                ring, t >= 1 && t <= k ? int(enumerate_surjections(k, t).size()) : 0, 0);
        const auto basis = enumerate_surjections(k, m);
        ExactMatrix out(ring, int(enumerate_surjections(k, t).size()), int(basis.size()));
        for (size_t j = 0; j < basis.size(); ++j)
            out.set(surjection_position(compose(s, basis[j])), int(j), 1);
        return out;
    });
}

SurjFunctorData truncate_surj_functor(const SurjFunctorData& f, int cutoff) {
    std::vector<int> ranks = f.ranks();
    for (int m = cutoff + 1; m <= f.max_size(); ++m) ranks[size_t(m)] = 0;
    return SurjFunctorData(f.ring(), f.max_size(), std::move(ranks), [&](const Surjection& s) {
        if (s.source_size() > cutoff)
            return ExactMatrix::zero(f.ring(),
                                     s.target_size() > cutoff ? 0 : f.rank(s.target_size()), 0);
        return f.action(s);
    });
}

ExactMatrix random_unimodular(const RingSpec& ring, int n, std::mt19937_64& rng) {
    ExactMatrix lower = ExactMatrix::identity(ring, n);
    ExactMatrix upper = ExactMatrix::identity(ring, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            lower.set(i, j, pick(rng, 5) - 2);
            upper.set(j, i, pick(rng, 5) - 2);
        }
    return multiply(lower, upper);
}

namespace {

SurjFunctorData random_atom(const RingSpec& ring, int max_size, int cap, bool allow_size_zero,
                            std::mt19937_64& rng) {
    struct Choice {
        int kind;
        int param;
    };
    std::vector<Choice> menu;
    if (allow_size_zero) menu.push_back({0, 0});  // rank one at the empty object
    for (int k = 1; k <= cap; ++k) {
        menu.push_back({1, k});                   // trivial character
        if (k >= 2) menu.push_back({2, k});       // sign character
        menu.push_back({3, k});                   // truncated constant-on-nonempty
    }
    for (int k = 2; k <= std::min(cap, 3); ++k) menu.push_back({4, k});  // corepresentable
    if (menu.empty()) return character_surj_functor(ring, max_size, 0, false);
    const Choice c = menu[size_t(pick(rng, long(menu.size())))];
    switch (c.kind) {
        case 0: return character_surj_functor(ring, max_size, 0, false);
        case 1: return character_surj_functor(ring, max_size, c.param, false);
        case 2: return character_surj_functor(ring, max_size, c.param, true);
        case 3:
            return truncate_surj_functor(constant_surj_functor(ring, max_size, false), c.param);
        default:
            return truncate_surj_functor(corep_surj_functor(ring, max_size, c.param),
                                         1 + int(pick(rng, std::min(c.param, cap))));
    }
}

}  // namespace

SurjFunctorData random_surj_functor(const RingSpec& ring, std::uint64_t seed,
                                    const RandomFunctorOptions& opt) {
    std::mt19937_64 rng(seed);
    const int cap = opt.degree_cap >= 0 ? std::min(opt.degree_cap, opt.max_size) : opt.max_size;
    std::optional<SurjFunctorData> acc;
    int atoms = 0;
    for (int tries = 0; tries < 12 && atoms < opt.max_atoms; ++tries) {
        SurjFunctorData cand = random_atom(ring, opt.max_size, cap, opt.allow_size_zero, rng);
        bool fits = true;
        for (int m = 0; m <= opt.max_size; ++m)
            if ((acc ? acc->rank(m) : 0) + cand.rank(m) > opt.max_rank) fits = false;
        if (!fits) continue;
        acc = acc ? direct_sum(*acc, cand) : std::move(cand);
        ++atoms;
    }
    if (!acc)
        acc = character_surj_functor(ring, opt.max_size,
                                     opt.max_rank >= 1 && cap >= 1 ? 1 : 0, false);
    if (opt.max_rank < 1) acc = truncate_surj_functor(*acc, -1);
    if (!opt.conjugate_values) return *acc;
    std::vector<ExactMatrix> change;
    for (int m = 0; m <= opt.max_size; ++m)
        change.push_back(random_unimodular(ring, acc->rank(m), rng));
    return conjugate(*acc, change);
}

FunctorData random_functor(const RingSpec& ring, std::uint64_t seed,
                           const RandomFunctorOptions& opt) {
    const SurjFunctorData f = random_surj_functor(ring, seed, opt);
    FunctorData g = ind(f, opt.max_size);
    if (!opt.conjugate_values) return g;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<ExactMatrix> change;
    for (int m = 0; m <= opt.max_size; ++m)
        change.push_back(random_unimodular(ring, g.rank(m), rng));
    return conjugate(g, change);
}

}  // namespace excal
