#include "excal/pointed_maps.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

namespace excal {

namespace {

void require_budget(int m, int target, const char* where) {
    if (m > kSizeBudget || target > kSizeBudget)
        throw BudgetExceeded(std::string(where) + ": sizes " + std::to_string(m) + ", " +
                             std::to_string(target) + " exceed the enumeration budget " +
                             std::to_string(kSizeBudget));
}

std::string images_to_string(const std::vector<int>& images) {
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < images.size(); ++i) out << (i ? "," : "") << images[i];
    out << "]";
    return out.str();
}

}  // namespace

void require_subset(const std::vector<int>& subset, int m, const char* where) {
    int prev = 0;
    for (int s : subset) {
        if (s <= prev || s > m)
            throw SubsetOutOfRange(std::string(where) + ": " + images_to_string(subset) +
                                   " is not a strictly increasing subset of [1.." +
                                   std::to_string(m) + "]");
        prev = s;
    }
}

PointedMap::PointedMap(int source_size, int target_size, std::vector<int> images)
    : source_size_(source_size), target_size_(target_size), images_(std::move(images)) {
    if (source_size < 0 || target_size < 0 || int(images_.size()) != source_size)
        throw MalformedMap("pointed map needs one image per source element, got " +
                           std::to_string(images_.size()) + " for size " +
                           std::to_string(source_size));
    for (int v : images_)
        if (v < 0 || v > target_size)
            throw MalformedMap("pointed map image " + std::to_string(v) + " outside 0.." +
                               std::to_string(target_size));
}

PointedMap PointedMap::identity(int m) {
    std::vector<int> images(m);
    for (int i = 0; i < m; ++i) images[i] = i + 1;
    return PointedMap(m, m, std::move(images));
}

long PointedMap::lex_index() const {
    long index = 0;
    for (int v : images_) index = index * (target_size_ + 1) + v;
    return index;
}

std::string PointedMap::to_string() const {
    return std::to_string(source_size_) + "->" + std::to_string(target_size_) +
           images_to_string(images_);
}

PointedMap compose(const PointedMap& g, const PointedMap& f) {
    if (f.target_size() != g.source_size())
        throw DimensionMismatch("compose: " + f.to_string() + " then " + g.to_string());
    std::vector<int> images(f.source_size());
    for (int i = 1; i <= f.source_size(); ++i) {
        const int mid = f.image_of(i);
        images[i - 1] = mid == 0 ? 0 : g.image_of(mid);
    }
    return PointedMap(f.source_size(), g.target_size(), std::move(images));
}

Surjection::Surjection(int source_size, int target_size, std::vector<int> images)
    : source_size_(source_size), target_size_(target_size), images_(std::move(images)) {
    if (source_size < 0 || target_size < 0 || int(images_.size()) != source_size)
        throw MalformedMap("surjection needs one image per source element");
    std::vector<char> hit(size_t(target_size) + 1, 0);
    for (int v : images_) {
        if (v < 1 || v > target_size)
            throw MalformedMap("surjection image " + std::to_string(v) + " outside 1.." +
                               std::to_string(target_size));
        hit[size_t(v)] = 1;
    }
    for (int t = 1; t <= target_size; ++t)
        if (!hit[size_t(t)])
            throw MalformedMap("map " + images_to_string(images_) + " misses " + std::to_string(t) +
                               ": not onto [" + std::to_string(target_size) + "]");
}

Surjection Surjection::identity(int m) {
    std::vector<int> images(m);
    for (int i = 0; i < m; ++i) images[i] = i + 1;
    return Surjection(m, m, std::move(images));
}

std::string Surjection::to_string() const {
    return std::to_string(source_size_) + "->>" + std::to_string(target_size_) +
           images_to_string(images_);
}

Surjection compose(const Surjection& g, const Surjection& f) {
    if (f.target_size() != g.source_size())
        throw DimensionMismatch("compose: " + f.to_string() + " then " + g.to_string());
    std::vector<int> images(f.source_size());
    for (int i = 1; i <= f.source_size(); ++i) images[i - 1] = g.image_of(f.image_of(i));
    return Surjection(f.source_size(), g.target_size(), std::move(images));
}

PointedMap phi_map(const std::vector<int>& subset, int m) {
    require_subset(subset, m, "phi_map");
    return PointedMap(int(subset.size()), m, subset);
}

PointedMap psi_map(const std::vector<int>& subset, int m) {
    require_subset(subset, m, "psi_map");
    std::vector<int> images(size_t(m), 0);
    for (size_t k = 0; k < subset.size(); ++k) images[size_t(subset[k]) - 1] = int(k) + 1;
    return PointedMap(m, int(subset.size()), std::move(images));
}

std::vector<PointedMap> enumerate_pointed_maps(int m, int target) {
    require_budget(m, target, "enumerate_pointed_maps");
    std::vector<PointedMap> out;
    std::vector<int> images(size_t(m), 0);
    for (;;) {
        out.emplace_back(m, target, images);
        int i = m - 1;
        while (i >= 0 && images[size_t(i)] == target) images[size_t(i--)] = 0;
        if (i < 0) break;
        ++images[size_t(i)];
    }
    return out;
}

std::vector<Surjection> enumerate_surjections(int m, int target) {
    require_budget(m, target, "enumerate_surjections");
    std::vector<Surjection> out;
    if (target > m || (target == 0 && m > 0)) return out;
    std::vector<int> images(size_t(m), 0);
    std::vector<int> hits(size_t(target) + 1, 0);
    int missing = target;
    // lexicographic backtracking; prune when the tail cannot cover what's left
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == m) {
            if (missing == 0) out.emplace_back(m, target, images);
            return;
        }
        if (missing > m - pos) return;
        for (int v = 1; v <= target; ++v) {
            images[size_t(pos)] = v;
            if (hits[size_t(v)]++ == 0) --missing;
            self(self, pos + 1);
            if (--hits[size_t(v)] == 0) ++missing;
        }
    };
    rec(rec, 0);
    return out;
}

Surjection collapse_map(int d) {
    if (d < 1) throw MalformedMap("collapse_map needs d >= 1");
    std::vector<int> images(size_t(d) + 1);
    for (int i = 1; i <= d + 1; ++i) images[size_t(i) - 1] = std::min(i, d);
    return Surjection(d + 1, d, std::move(images));
}

PointedMap smash(const PointedMap& f, const PointedMap& g) {
    const int m2 = g.source_size(), t2 = g.target_size();
    std::vector<int> images(size_t(f.source_size()) * size_t(m2));
    for (int i = 1; i <= f.source_size(); ++i)
        for (int j = 1; j <= m2; ++j) {
            const int fi = f.image_of(i), gj = g.image_of(j);
            images[size_t(i - 1) * m2 + (j - 1)] = (fi == 0 || gj == 0) ? 0 : (fi - 1) * t2 + gj;
        }
    return PointedMap(f.source_size() * m2, f.target_size() * t2, std::move(images));
}

PointedMap wedge(const PointedMap& f, const PointedMap& g) {
    std::vector<int> images;
    images.reserve(size_t(f.source_size()) + size_t(g.source_size()));
    for (int v : f.images()) images.push_back(v);
    for (int v : g.images()) images.push_back(v == 0 ? 0 : v + f.target_size());
    return PointedMap(f.source_size() + g.source_size(), f.target_size() + g.target_size(),
                      std::move(images));
}

const std::vector<std::vector<int>>& subset_order(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<int>>> cache;
    if (m < 0 || m > kSizeBudget)
        throw BudgetExceeded("subset_order: size " + std::to_string(m) + " out of range");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> all;
    for (int k = 0; k <= m; ++k) {
        // lexicographically first k-subset is (1, ..., k)
        std::vector<int> s(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) s[size_t(i)] = i + 1;
        for (;;) {
            all.push_back(s);
            int i = k - 1;
            while (i >= 0 && s[size_t(i)] == m - (k - 1 - i)) --i;
            if (i < 0) break;
            ++s[size_t(i)];
            for (int j = i + 1; j < k; ++j) s[size_t(j)] = s[size_t(j - 1)] + 1;
        }
    }
    return cache.emplace(m, std::move(all)).first->second;
}

size_t subset_index(int m, const std::vector<int>& subset) {
    require_subset(subset, m, "subset_index");
    const auto& order = subset_order(m);
    auto before = [](const std::vector<int>& a, const std::vector<int>& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    };
    auto it = std::lower_bound(order.begin(), order.end(), subset, before);
    assert(it != order.end() && *it == subset);
    return size_t(it - order.begin());
}

PointedMap pointed_map_from_index(int m, int target, long index) {
    std::vector<int> images(static_cast<size_t>(m));
    for (int i = m; i >= 1; --i) {
        images[size_t(i) - 1] = int(index % (target + 1));
        index /= target + 1;
    }
    if (index != 0) throw MalformedMap("pointed_map_from_index: index out of range");
    return PointedMap(m, target, std::move(images));
}

}  // namespace excal
