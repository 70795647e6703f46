#include "excal/hypercube.hpp"

#include <numeric>
#include <sstream>

namespace excal {

int HypercubeSpec::total_size() const {
    return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

std::string HypercubeSpec::to_string() const {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < block_sizes.size(); ++i) out << (i ? "," : "") << block_sizes[i];
    out << ")";
    return out.str();
}

HypercubeDiagram::HypercubeDiagram(HypercubeSpec spec) : spec_(std::move(spec)) {
    for (int s : spec_.block_sizes)
        if (s < 1) throw MalformedMap("hypercube blocks must be nonempty, got size " + std::to_string(s));
    if (spec_.total_size() > kSizeBudget || spec_.block_count() > kSizeBudget)
        throw BudgetExceeded("hypercube " + spec_.to_string() + " exceeds the size budget " +
                             std::to_string(kSizeBudget));
    offsets_.assign(size_t(spec_.block_count()) + 1, 0);
    for (int b = 0; b < spec_.block_count(); ++b)
        offsets_[size_t(b) + 1] = offsets_[size_t(b)] + spec_.block_sizes[size_t(b)];

    // Both orders around every square must agree; with the order-preserving
    // renumbering above this is automatic, but it is cheap to re-verify.
    for (unsigned from = 0; from <= full_mask(); ++from)
        for (int a = 0; a < spec_.block_count(); ++a) {
            if (!(from >> a & 1u)) continue;
            for (int b = a + 1; b < spec_.block_count(); ++b) {
                if (!(from >> b & 1u)) continue;
                const unsigned va = from & ~(1u << a), vb = from & ~(1u << b);
                const unsigned w = va & vb;
                if (compose(arrow(va, w), arrow(from, va)) != compose(arrow(vb, w), arrow(from, vb)))
                    throw std::logic_error("hypercube " + spec_.to_string() +
                                           ": square does not commute");
            }
        }
}

int HypercubeDiagram::vertex_size(unsigned mask) const {
    int size = 0;
    for (int b = 0; b < spec_.block_count(); ++b)
        if (mask >> b & 1u) size += spec_.block_sizes[size_t(b)];
    return size;
}

std::vector<int> HypercubeDiagram::vertex_elements(unsigned mask) const {
    std::vector<int> slots;
    for (int b = 0; b < spec_.block_count(); ++b)
        if (mask >> b & 1u)
            for (int s = offsets_[size_t(b)] + 1; s <= offsets_[size_t(b) + 1]; ++s)
                slots.push_back(s);
    return slots;
}

PointedMap HypercubeDiagram::arrow(unsigned from, unsigned to) const {
    if (from > full_mask() || (to & ~from) != 0)
        throw SubsetOutOfRange("hypercube arrow: target vertex is not a face of the source");
    const std::vector<int> source = vertex_elements(from);
    const std::vector<int> target = vertex_elements(to);
    std::vector<int> position(size_t(spec_.total_size()) + 1, 0);
    for (size_t k = 0; k < target.size(); ++k) position[size_t(target[k])] = int(k) + 1;
    std::vector<int> images(source.size());
    for (size_t k = 0; k < source.size(); ++k) images[k] = position[size_t(source[k])];
    return PointedMap(int(source.size()), int(target.size()), std::move(images));
}

}  // namespace excal
