#include <algorithm>
#include <memory>
#include <random>

#include "doctest.h"
#include "excal/functor_ops.hpp"
#include "excal/random_functors.hpp"

using namespace excal;

namespace {

const std::vector<RingSpec> kRings = {RingSpec::rationals(), RingSpec::prime_field(5),
                                      RingSpec::integers()};

// naturality of comps against every surjection between sizes <= max
bool natural_on_surjections(const SurjFunctorData& f, const SurjFunctorData& g,
                            const std::vector<ExactMatrix>& comps) {
    for (int m = 0; m <= f.max_size(); ++m)
        for (int t = 0; t <= m; ++t)
            for (const auto& s : enumerate_surjections(m, t))
                if (multiply(comps[size_t(t)], f.action(s)) !=
                    multiply(g.action(s), comps[size_t(m)]))
                    return false;
    return true;
}

// provider used to exercise the validator's failure path
class BrokenProvider : public ActionProvider {
  public:
    explicit BrokenProvider(RingSpec ring) : ring_(ring) {}
    ExactMatrix compute(const PointedMap& f) const override {
        ExactMatrix a = ExactMatrix::identity(ring_, 1);
        // misbehaves on one specific non-identity map
        if (f.source_size() == 2 && f.target_size() == 1 && f.images() == std::vector<int>{1, 1})
            a.set(0, 0, 2);
        return a;
    }

  private:
    RingSpec ring_;
};

}  // namespace

TEST_CASE("constant functor validates and has degree zero") {
    for (const auto& ring : kRings) {
        FunctorData c = constant_functor(ring, 4, 2);
        CHECK(validate_functor(c).ok);
        CHECK(degree(c) == 0);
        CHECK(degree_le_joint_image(c, 0));
        CHECK(degree_le_kernel_meet(c, 0));
        CHECK(degree_le_equalizer(c, 0));
        CHECK(degree_le_primitives(c, 0));
    }
}

TEST_CASE("ind of the rank-one corepresentable squares the size") {
    // ind(linearized Surj([2], -)) is the reduced linearization of the smash
    // square: rank m^2 at size m
    for (const auto& ring : kRings) {
        SurjFunctorData f = corep_surj_functor(ring, 4, 2);
        CHECK(f.ranks() == std::vector<int>{0, 1, 2, 0, 0});
        FunctorData g = ind(f, 4);
        CHECK(g.ranks() == std::vector<int>{0, 1, 4, 9, 16});
        CHECK(degree(g) == 2);
        // the action entries are the same 0/1 matrices over every ring;
        // one full composition sweep suffices
        if (ring.kind() == RingKind::integers) CHECK(validate_functor(g).ok);
    }
}

TEST_CASE("ind of the sign character gives the exterior ranks") {
    FunctorData g = ind(character_surj_functor(RingSpec::integers(), 4, 2, true), 4);
    CHECK(g.ranks() == std::vector<int>{0, 0, 1, 3, 6});  // C(m, 2)
    CHECK(validate_functor(g).ok);
    CHECK(degree(g) == 2);
}

TEST_CASE("ind_constant ranks and degree") {
    FunctorData g = ind_constant(RingSpec::integers(), 4);
    CHECK(g.ranks() == std::vector<int>{0, 1, 3, 7, 15});
    CHECK(validate_functor(g).ok);
    CHECK(degree(g) == 4);
    CHECK_FALSE(degree_le_joint_image(g, 3));
    CHECK_FALSE(degree_le_kernel_meet(g, 3));
    CHECK_FALSE(degree_le_equalizer(g, 3));
    CHECK_FALSE(degree_le_primitives(g, 3));
}

TEST_CASE("primitives recover the surjection functor under ind") {
    std::mt19937_64 seeds(4242);
    for (const auto& ring : kRings)
        for (int instance = 0; instance < 6; ++instance) {
            RandomFunctorOptions opt;
            opt.max_size = 3;
            SurjFunctorData f = random_surj_functor(ring, seeds(), opt);
            FunctorData g = ind(f, 3);
            PrimData p = prim(g);
            CHECK(p.functor.ranks() == f.ranks());
            // the iso: f(m) sits as the full-subset block of ind(f)(m)
            std::vector<ExactMatrix> comps;
            for (int m = 0; m <= 3; ++m) {
                const auto off = ind_offsets(f, m);
                ExactMatrix unit(ring, g.rank(m), f.rank(m));
                const int last = off[off.size() - 2];
                for (int j = 0; j < f.rank(m); ++j) unit.set(last + j, j, 1);
                auto t = solve(p.embed[size_t(m)], unit);
                REQUIRE(t.has_value());
                CHECK(is_invertible(*t));
                comps.push_back(*t);
            }
            CHECK(natural_on_surjections(f, p.functor, comps));
        }
}

TEST_CASE("decompose: natural isomorphism from the induced primitives") {
    std::mt19937_64 seeds(777);
    for (const auto& ring : kRings)
        for (int instance = 0; instance < 4; ++instance) {
            RandomFunctorOptions opt;
            opt.max_size = 3;
            opt.max_rank = 2;
            FunctorData g = random_functor(ring, seeds(), opt);
            Decomposition d = decompose(g);
            CHECK(d.induced.ranks() == g.ranks());
            for (int m = 0; m <= 3; ++m) CHECK(is_invertible(d.iso[size_t(m)]));
            // naturality against every pointed map
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; b <= 3; ++b)
                    for (const auto& f : enumerate_pointed_maps(a, b))
                        CHECK(multiply(d.iso[size_t(b)], d.induced.action(f)) ==
                              multiply(g.action(f), d.iso[size_t(a)]));
        }
}

TEST_CASE("decompose agrees with the idempotent splitting blockwise") {
    // independent route to the same summands: products of the commuting
    // idempotents phi_S psi_S carve g(m) into the same pieces the assembled
    // comparison produces
    std::mt19937_64 seeds(31337);
    for (const auto& ring : kRings) {
        RandomFunctorOptions opt;
        opt.max_size = 3;
        opt.max_rank = 2;
        FunctorData g = random_functor(ring, seeds(), opt);
        Decomposition d = decompose(g);
        for (int m = 0; m <= 3; ++m) {
            const auto& subsets = subset_order(m);
            const auto off = ind_offsets(d.primitives.functor, m);
            for (size_t si = 0; si < subsets.size(); ++si) {
                // idempotent for S: keep the factors in S primitive, average
                // the rest away through their retractions
                ExactMatrix pi = ExactMatrix::identity(ring, g.rank(m));
                for (int i = 1; i <= m; ++i) {
                    std::vector<int> rest;
                    for (int j = 1; j <= m; ++j)
                        if (j != i) rest.push_back(j);
                    const ExactMatrix e =
                        multiply(g.action(phi_map(rest, m)), g.action(psi_map(rest, m)));
                    const bool in_s =
                        std::find(subsets[si].begin(), subsets[si].end(), i) != subsets[si].end();
                    const ExactMatrix factor =
                        in_s ? subtract(ExactMatrix::identity(ring, g.rank(m)), e) : e;
                    pi = multiply(pi, factor);
                }
                CHECK(multiply(pi, pi) == pi);
                // image of pi == image of the S block of the comparison
                const ExactMatrix block =
                    d.iso[size_t(m)].submatrix(0, g.rank(m), off[si], off[si + 1]);
                const ExactMatrix image_basis = split_idempotent(pi).first;
                CHECK(solve(image_basis, block).has_value());
                CHECK(solve(block, image_basis).has_value());
            }
        }
    }
}

TEST_CASE("degree conditions agree across sizes and rings") {
    std::mt19937_64 seeds(2024);
    for (const auto& ring : kRings)
        for (int instance = 0; instance < 5; ++instance) {
            RandomFunctorOptions opt;
            opt.max_size = 3;
            opt.max_rank = 2;
            FunctorData g = random_functor(ring, seeds(), opt);
            const int d = degree(g);
            for (int n = 0; n <= 3; ++n) {
                const bool expected = n >= d;
                CHECK(degree_le_joint_image(g, n) == expected);
                CHECK(degree_le_kernel_meet(g, n) == expected);
                CHECK(degree_le_equalizer(g, n) == expected);
                CHECK(degree_le_primitives(g, n) == expected);
            }
        }
}

TEST_CASE("degree_cap bounds the degree of random functors") {
    std::mt19937_64 seeds(606);
    for (int cap = 0; cap <= 3; ++cap)
        for (int instance = 0; instance < 3; ++instance) {
            RandomFunctorOptions opt;
            opt.max_size = 4;
            opt.degree_cap = cap;
            FunctorData g = random_functor(RingSpec::rationals(), seeds(), opt);
            CHECK(degree(g) <= cap);
        }
}

TEST_CASE("random functors validate as functors") {
    std::mt19937_64 seeds(11);
    for (const auto& ring : kRings) {
        RandomFunctorOptions opt;
        opt.max_size = 3;
        FunctorData g = random_functor(ring, seeds(), opt);
        CHECK(validate_functor(g).ok);
    }
}

TEST_CASE("validator reports a violated composition square") {
    FunctorData broken(RingSpec::rationals(), 2, {1, 1, 1},
                       std::make_shared<BrokenProvider>(RingSpec::rationals()));
    const FunctorCheck check = validate_functor(broken);
    CHECK_FALSE(check.ok);
    CHECK(check.detail.find("composition square") != std::string::npos);
}

TEST_CASE("surjection functor construction rejects a broken action table") {
    const RingSpec ring = RingSpec::rationals();
    CHECK_THROWS_AS(SurjFunctorData(ring, 3, {0, 1, 1, 1},
                                    [&](const Surjection& s) {
                                        ExactMatrix a = ExactMatrix::identity(ring, 1);
                                        if (s.source_size() == 3 && s.target_size() == 2)
                                            a.set(0, 0, 2);
                                        if (s.source_size() == 0 || s.target_size() == 0)
                                            return ExactMatrix::zero(ring,
                                                                     s.target_size() ? 1 : 0,
                                                                     s.source_size() ? 1 : 0);
                                        return a;
                                    }),
                    NotAFunctor);
}

TEST_CASE("kernel and cokernel of natural transformations") {
    for (const auto& ring : kRings) {
        // fold map ind(c + c) -> ind(c) built blockwise from the offsets
        const SurjFunctorData c = constant_surj_functor(ring, 3, false);
        const SurjFunctorData cc = direct_sum(c, c);
        FunctorData source = ind(cc, 3);
        FunctorData target = ind(c, 3);
        std::vector<ExactMatrix> comps;
        for (int m = 0; m <= 3; ++m) {
            const auto off_s = ind_offsets(cc, m);
            const auto off_t = ind_offsets(c, m);
            ExactMatrix tau(ring, target.rank(m), source.rank(m));
            const auto& subsets = subset_order(m);
            for (size_t si = 0; si < subsets.size(); ++si)
                for (int j = 0; j < cc.rank(int(subsets[si].size())); ++j)
                    tau.set(off_t[si], off_s[si] + j, 1);
            comps.push_back(tau);
        }
        NatTransform fold(source, target, comps);

        SubFunctor ker = nat_kernel(fold);
        CHECK(ker.functor.ranks() == std::vector<int>{0, 1, 3, 7});
        CHECK(validate_functor(ker.functor).ok);
        for (int m = 0; m <= 3; ++m)
            CHECK(multiply(fold.component(m), ker.embed[size_t(m)]).is_zero());

        QuotFunctor coker = nat_cokernel(fold);
        CHECK(coker.functor.ranks() == std::vector<int>{0, 0, 0, 0});

        // the inclusion of the first summand has zero kernel and free cokernel
        std::vector<ExactMatrix> inc;
        for (int m = 0; m <= 3; ++m) {
            const auto off_s = ind_offsets(c, m);
            const auto off_t = ind_offsets(cc, m);
            ExactMatrix tau(ring, source.rank(m), target.rank(m));
            const auto& subsets = subset_order(m);
            for (size_t si = 0; si < subsets.size(); ++si)
                if (c.rank(int(subsets[si].size())) == 1) tau.set(off_t[si], off_s[si], 1);
            inc.push_back(tau);
        }
        NatTransform include(target, source, inc);
        CHECK(nat_kernel(include).functor.ranks() == std::vector<int>{0, 0, 0, 0});
        QuotFunctor q = nat_cokernel(include);
        CHECK(q.functor.ranks() == std::vector<int>{0, 1, 3, 7});
        CHECK(validate_functor(q.functor).ok);
        for (int m = 0; m <= 3; ++m) {
            CHECK(multiply(q.project[size_t(m)], include.component(m)).is_zero());
            CHECK(multiply(q.project[size_t(m)], q.section[size_t(m)]).is_identity());
        }
    }
}

TEST_CASE("multiplication by two over Z has torsion cokernel") {
    FunctorData g = ind_constant(RingSpec::integers(), 2);
    std::vector<ExactMatrix> twos;
    for (int m = 0; m <= 2; ++m)
        twos.push_back(scale(ExactMatrix::identity(RingSpec::integers(), g.rank(m)),
                             scalar_from_long(RingSpec::integers(), 2)));
    NatTransform doubling(g, g, twos);
    CHECK(nat_kernel(doubling).functor.ranks() == std::vector<int>{0, 0, 0});
    CHECK_THROWS_AS(nat_cokernel(doubling), NonFreeCokernel);
}

TEST_CASE("NatTransform rejects non-natural components") {
    const RingSpec ring = RingSpec::rationals();
    FunctorData g = ind_constant(ring, 2);
    std::vector<ExactMatrix> comps;
    for (int m = 0; m <= 2; ++m) comps.push_back(ExactMatrix::identity(ring, g.rank(m)));
    CHECK_NOTHROW(NatTransform(g, g, comps));
    comps[2].set(0, 1, 1);  // perturb one entry
    CHECK_THROWS_AS(NatTransform(g, g, comps), NotNatural);
}

TEST_CASE("action queries outside the size bound are rejected") {
    FunctorData g = constant_functor(RingSpec::rationals(), 2, 1);
    CHECK_THROWS_AS(g.action(PointedMap::identity(3)), PreconditionViolated);
    CHECK_THROWS_AS(g.rank(3), PreconditionViolated);
}

TEST_CASE("conjugation preserves validity and degree") {
    std::mt19937_64 rng(99);
    for (const auto& ring : kRings) {
        FunctorData g = ind(corep_surj_functor(ring, 3, 2), 3);
        std::vector<ExactMatrix> change;
        for (int m = 0; m <= 3; ++m) change.push_back(random_unimodular(ring, g.rank(m), rng));
        FunctorData h = conjugate(g, change);
        CHECK(validate_functor(h).ok);
        CHECK(degree(h) == 2);
        CHECK(h.ranks() == g.ranks());
    }
}

TEST_CASE("random seeds reproduce identical functors") {
    RandomFunctorOptions opt;
    opt.max_size = 3;
    FunctorData a = random_functor(RingSpec::integers(), 12345, opt);
    FunctorData b = random_functor(RingSpec::integers(), 12345, opt);
    CHECK(a.ranks() == b.ranks());
    for (int m = 0; m <= 3; ++m)
        for (int t = 0; t <= 3; ++t)
            for (const auto& f : enumerate_pointed_maps(m, t))
                CHECK(a.action(f) == b.action(f));
}
