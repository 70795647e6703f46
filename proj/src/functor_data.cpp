#include "excal/functor_data.hpp"

#include <mutex>
#include <random>
#include <tuple>

#include "excal/errors.hpp"

namespace excal {

namespace {

long power_count(int base, int exp) {
    long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

std::string square_detail(const std::string& first, const std::string& second) {
    return "composition square violated for " + first + " followed by " + second;
}

}  // namespace

// --- SurjFunctorData --------------------------------------------------------

SurjFunctorData::SurjFunctorData(RingSpec ring, int max_size, std::vector<int> ranks,
                                 const std::function<ExactMatrix(const Surjection&)>& build)
    : ring_(ring), max_size_(max_size), ranks_(std::move(ranks)) {
    if (max_size_ < 0 || max_size_ > kSizeBudget)
        throw BudgetExceeded("SurjFunctorData: max size " + std::to_string(max_size_));
    if (int(ranks_.size()) != max_size_ + 1)
        throw PreconditionViolated("SurjFunctorData: need one rank per size 0..max_size");
    for (int r : ranks_)
        if (r < 0) throw PreconditionViolated("SurjFunctorData: negative rank");

    for (int m = 0; m <= max_size_; ++m)
        for (int t = 0; t <= max_size_; ++t) {
            auto& slot = actions_[{m, t}];
            for (const auto& s : enumerate_surjections(m, t)) {
                ExactMatrix a = build(s);
                if (a.ring() != ring_) throw WrongRing("SurjFunctorData: action over wrong ring");
                if (a.rows() != ranks_[size_t(t)] || a.cols() != ranks_[size_t(m)])
                    throw DimensionMismatch("SurjFunctorData: action for " +
                                            s.as_pointed_map().to_string() + " has wrong shape");
                slot.emplace(s.images(), std::move(a));
            }
        }

    for (int m = 0; m <= max_size_; ++m)
        if (!action(Surjection::identity(m)).is_identity())
            throw NotAFunctor("SurjFunctorData: identity at size " + std::to_string(m) +
                              " is not the identity matrix");

    // composition squares: exhaustive up to source size 5, sampled at 6
    std::mt19937_64 rng(0x50f1a7ULL);
    for (int a = 0; a <= max_size_; ++a)
        for (int b = 0; b <= a; ++b) {
            const auto firsts = enumerate_surjections(a, b);
            if (firsts.empty()) continue;
            for (int c = 0; c <= b; ++c) {
                const auto seconds = enumerate_surjections(b, c);
                if (seconds.empty()) continue;
                const bool exhaustive = a <= 5;
                const size_t samples = exhaustive ? firsts.size() * seconds.size() : 400;
                for (size_t k = 0; k < samples; ++k) {
                    const auto& f = exhaustive ? firsts[k / seconds.size()]
                                               : firsts[rng() % firsts.size()];
                    const auto& g = exhaustive ? seconds[k % seconds.size()]
                                               : seconds[rng() % seconds.size()];
                    if (action(compose(g, f)) != multiply(action(g), action(f)))
                        throw NotAFunctor("SurjFunctorData: " +
                                          square_detail(f.as_pointed_map().to_string(),
                                                        g.as_pointed_map().to_string()));
                }
            }
        }
}

int SurjFunctorData::rank(int m) const {
    if (m < 0 || m > max_size_)
        throw PreconditionViolated("SurjFunctorData: rank query outside 0..max_size");
    return ranks_[size_t(m)];
}

const ExactMatrix& SurjFunctorData::action(const Surjection& s) const {
    auto pair_it = actions_.find({s.source_size(), s.target_size()});
    if (pair_it == actions_.end())
        throw PreconditionViolated("SurjFunctorData: action outside 0..max_size");
    auto it = pair_it->second.find(s.images());
    if (it == pair_it->second.end())
        throw PreconditionViolated("SurjFunctorData: unknown surjection " +
                                   s.as_pointed_map().to_string());
    return it->second;
}

// --- FunctorData ------------------------------------------------------------

struct FunctorData::State {
    RingSpec ring;
    int max_size;
    std::vector<int> ranks;
    std::shared_ptr<const ActionProvider> provider;
    mutable std::mutex mu;
    mutable std::map<std::tuple<int, int, long>, ExactMatrix> cache;

    State(RingSpec r, int n, std::vector<int> rk, std::shared_ptr<const ActionProvider> p)
        : ring(r), max_size(n), ranks(std::move(rk)), provider(std::move(p)) {}
};

FunctorData::FunctorData(RingSpec ring, int max_size, std::vector<int> ranks,
                         std::shared_ptr<const ActionProvider> provider) {
    if (max_size < 0 || max_size > kSizeBudget)
        throw BudgetExceeded("FunctorData: max size " + std::to_string(max_size));
    if (int(ranks.size()) != max_size + 1)
        throw PreconditionViolated("FunctorData: need one rank per size 0..max_size");
    for (int r : ranks)
        if (r < 0) throw PreconditionViolated("FunctorData: negative rank");
    if (!provider) throw PreconditionViolated("FunctorData: null provider");
    state_ = std::make_shared<State>(ring, max_size, std::move(ranks), std::move(provider));
}

const RingSpec& FunctorData::ring() const { return state_->ring; }
int FunctorData::max_size() const { return state_->max_size; }
const std::vector<int>& FunctorData::ranks() const { return state_->ranks; }

int FunctorData::rank(int m) const {
    if (m < 0 || m > state_->max_size)
        throw PreconditionViolated("FunctorData: rank query outside 0..max_size");
    return state_->ranks[size_t(m)];
}

const ExactMatrix& FunctorData::action(const PointedMap& f) const {
    const int m = f.source_size(), t = f.target_size();
    if (m > state_->max_size || t > state_->max_size)
        throw PreconditionViolated("FunctorData: map " + f.to_string() +
                                   " exceeds max size " + std::to_string(state_->max_size));
    const std::tuple<int, int, long> key{m, t, f.lex_index()};
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto it = state_->cache.find(key);
        if (it != state_->cache.end()) return it->second;
    }
    ExactMatrix a = state_->provider->compute(f);
    if (a.ring() != state_->ring) throw WrongRing("FunctorData: action over wrong ring");
    if (a.rows() != rank(t) || a.cols() != rank(m))
        throw DimensionMismatch("FunctorData: action for " + f.to_string() + " has shape " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->cache.emplace(key, std::move(a)).first->second;
}

// --- validation -------------------------------------------------------------

FunctorCheck validate_functor(const FunctorData& g) {
    const int n = g.max_size();
    for (int m = 0; m <= n; ++m)
        if (!g.action(PointedMap::identity(m)).is_identity())
            return {false, "identity at size " + std::to_string(m) + " is not the identity matrix"};

    std::mt19937_64 rng(0xc0de5eedULL);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            for (int c = 0; c <= n; ++c) {
                const long fcount = power_count(b + 1, a);
                const long gcount = power_count(c + 1, b);
                const bool exhaustive = a <= 4 && b <= 4 && c <= 4;
                const long pairs = exhaustive ? fcount * gcount : 300;
                for (long k = 0; k < pairs; ++k) {
                    const PointedMap f =
                        pointed_map_from_index(a, b, exhaustive ? k / gcount : long(rng() % fcount));
                    const PointedMap h =
                        pointed_map_from_index(b, c, exhaustive ? k % gcount : long(rng() % gcount));
                    if (g.action(compose(h, f)) != multiply(g.action(h), g.action(f)))
                        return {false, square_detail(f.to_string(), h.to_string())};
                }
            }
    return {};
}

// --- NatTransform -----------------------------------------------------------

NatTransform::NatTransform(FunctorData source, FunctorData target,
                           std::vector<ExactMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (source_.ring() != target_.ring())
        throw WrongRing("NatTransform: source and target over different rings");
    if (source_.max_size() != target_.max_size())
        throw PreconditionViolated("NatTransform: source and target max sizes differ");
    const int n = source_.max_size();
    if (int(components_.size()) != n + 1)
        throw PreconditionViolated("NatTransform: need one component per size 0..max_size");
    for (int m = 0; m <= n; ++m) {
        const ExactMatrix& c = components_[size_t(m)];
        if (c.ring() != source_.ring()) throw WrongRing("NatTransform: component over wrong ring");
        if (c.rows() != target_.rank(m) || c.cols() != source_.rank(m))
            throw DimensionMismatch("NatTransform: component at size " + std::to_string(m) +
                                    " has wrong shape");
    }

    std::mt19937_64 rng(0x7a115eedULL);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            const long count = power_count(b + 1, a);
            const bool exhaustive = a <= 4 && b <= 4;
            const long checks = exhaustive ? count : 300;
            for (long k = 0; k < checks; ++k) {
                const PointedMap f = pointed_map_from_index(a, b, exhaustive ? k : long(rng() % count));
                const ExactMatrix lhs = multiply(components_[size_t(b)], source_.action(f));
                const ExactMatrix rhs = multiply(target_.action(f), components_[size_t(a)]);
                if (lhs != rhs) throw NotNatural("NatTransform: naturality fails at " + f.to_string());
            }
        }
}

const ExactMatrix& NatTransform::component(int m) const {
    if (m < 0 || m >= int(components_.size()))
        throw PreconditionViolated("NatTransform: component outside 0..max_size");
    return components_[size_t(m)];
}

}  // namespace excal
