#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "excal/linalg.hpp"
#include "excal/matrix.hpp"
#include "excal/pointed_maps.hpp"

namespace excal {

// Functor on the category whose objects are the sizes 0..max_size and whose
// morphisms are the surjections [m] ->> [m'].  Values are free modules
// recorded by their ranks; every action matrix is built eagerly through the
// callback and functoriality (identities plus all composition squares) is
// verified on construction — exhaustively up to size 5, by a fixed
// deterministic sample at size 6.  Throws NotAFunctor on a violated square.
class SurjFunctorData {
  public:
    SurjFunctorData(RingSpec ring, int max_size, std::vector<int> ranks,
                    const std::function<ExactMatrix(const Surjection&)>& build);

    const RingSpec& ring() const { return ring_; }
    int max_size() const { return max_size_; }
    const std::vector<int>& ranks() const { return ranks_; }
    int rank(int m) const;
    const ExactMatrix& action(const Surjection& s) const;

  private:
    RingSpec ring_;
    int max_size_ = 0;
    std::vector<int> ranks_;
    // per (source, target) size pair, keyed by the image list
    std::map<std::pair<int, int>, std::map<std::vector<int>, ExactMatrix>> actions_;
};

class ActionProvider {
  public:
    virtual ~ActionProvider() = default;
    virtual ExactMatrix compute(const PointedMap& f) const = 0;
};

// Functor from pointed sets {*} u [m], m <= max_size, to free modules.  The
// provider produces action matrices on demand and results are memoized
// behind a shared handle, so induced functors at size 5 and 6 never
// materialize their full action tables.  Copies share the cache.
class FunctorData {
  public:
    FunctorData(RingSpec ring, int max_size, std::vector<int> ranks,
                std::shared_ptr<const ActionProvider> provider);

    const RingSpec& ring() const;
    int max_size() const;
    const std::vector<int>& ranks() const;
    int rank(int m) const;

    // References stay valid for the life of the functor: the memo cache is
    // node-based and entries are never evicted.
    const ExactMatrix& action(const PointedMap& f) const;
    const ExactMatrix& action(const Surjection& s) const { return action(s.as_pointed_map()); }

  private:
    struct State;
    std::shared_ptr<State> state_;
};

struct FunctorCheck {
    bool ok = true;
    std::string detail;  // describes the first violated square when !ok
};

// Identity and composition checks for a pointed-set functor: exhaustive over
// all triples of sizes <= 4, deterministic fixed-seed samples for triples
// that reach size 5 or 6.
FunctorCheck validate_functor(const FunctorData& g);

// Natural transformation between functors of equal max_size over the same
// ring.  components[m] has shape target.rank(m) x source.rank(m).  The
// constructor verifies naturality against every pointed map between sizes
// <= 4 and fixed samples for larger sizes; throws NotNatural on a violation.
class NatTransform {
  public:
    NatTransform(FunctorData source, FunctorData target, std::vector<ExactMatrix> components);

    const FunctorData& source() const { return source_; }
    const FunctorData& target() const { return target_; }
    const ExactMatrix& component(int m) const;
    const std::vector<ExactMatrix>& components() const { return components_; }

  private:
    FunctorData source_, target_;
    std::vector<ExactMatrix> components_;
};

}  // namespace excal
