#include "excal/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "json.hpp"

#include "excal/errors.hpp"
#include "excal/functor_ops.hpp"
#include "excal/polyfunctors.hpp"

namespace excal {

using nlohmann::json;

namespace {

using ActionKey = std::tuple<int, int, std::vector<int>>;

json scalar_to_json(const RingSpec& ring, const Scalar& s) {
    switch (ring.kind()) {
        case RingKind::rationals:
            return s.get_str();
        case RingKind::integers:
            return s.get_num().get_str();
        case RingKind::prime_field:
            return s.get_num().get_si();
    }
    throw std::logic_error("scalar_to_json: unhandled ring kind");
}

Scalar scalar_from_json(const RingSpec& ring, const json& j, const std::string& field) {
    if (ring.kind() == RingKind::prime_field) {
        if (!j.is_number_integer())
            throw ParseError(field + ": prime-field entries are plain integer residues");
        return scalar_from_long(ring, j.get<long>());
    }
    if (!j.is_string())
        throw ParseError(field + ": entries over " + ring.name() + " are exact strings");
    mpq_class v;
    try {
        v = mpq_class(j.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
        throw ParseError(field + ": cannot read '" + j.get<std::string>() + "' as a number");
    }
    if (sgn(v.get_den()) == 0) throw ParseError(field + ": zero denominator");
    v.canonicalize();
    if (ring.kind() == RingKind::integers && v.get_den() != 1)
        throw ParseError(field + ": not an integer over Z");
    return ring_normalize(ring, v);
}

json matrix_to_json(const RingSpec& ring, const ExactMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(ring, m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ExactMatrix matrix_from_json(const RingSpec& ring, const json& j, int rows, int cols,
                             const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError(field + ": expected " + std::to_string(rows) + " rows");
    ExactMatrix m(ring, rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError(field + ": row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m.set(r, c,
                  scalar_from_json(ring, row[static_cast<size_t>(c)],
                                   field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    }
    return m;
}

const json& require_field(const json& j, const std::string& name) {
    const auto it = j.find(name);
    if (it == j.end()) throw ParseError("missing field '" + name + "'");
    return *it;
}

int require_int(const json& j, const std::string& name, int lo, int hi) {
    const json& f = require_field(j, name);
    if (!f.is_number_integer()) throw ParseError("field '" + name + "': expected an integer");
    const long v = f.get<long>();
    if (v < lo || v > hi)
        throw ParseError("field '" + name + "': " + std::to_string(v) + " outside " +
                         std::to_string(lo) + ".." + std::to_string(hi));
    return static_cast<int>(v);
}

void check_fields(const json& j, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) throw ParseError("unexpected field '" + key + "'");
}

std::vector<int> parse_ranks(const json& j, int max_size) {
    const json& f = require_field(j, "ranks");
    if (!f.is_array() || static_cast<int>(f.size()) != max_size + 1)
        throw ParseError("field 'ranks': expected " + std::to_string(max_size + 1) + " entries");
    std::vector<int> ranks;
    for (const json& e : f) {
        if (!e.is_number_integer() || e.get<long>() < 0)
            throw ParseError("field 'ranks': entries are nonnegative integers");
        ranks.push_back(e.get<int>());
    }
    return ranks;
}

std::vector<FunctorSpec::ActionEntry> parse_actions(const json& j, const RingSpec& ring,
                                                    const std::vector<int>& ranks, int max_size,
                                                    bool surjections_only) {
    const json& f = require_field(j, "actions");
    if (!f.is_array()) throw ParseError("field 'actions': expected an array");
    std::vector<FunctorSpec::ActionEntry> actions;
    std::set<ActionKey> seen;
    for (size_t idx = 0; idx < f.size(); ++idx) {
        const std::string where = "actions[" + std::to_string(idx) + "]";
        const json& e = f[idx];
        if (!e.is_object()) throw ParseError(where + ": expected an object");
        check_fields(e, {"images", "matrix", "source", "target"});
        const int source = require_int(e, "source", 0, max_size);
        const int target = require_int(e, "target", 0, max_size);
        const json& ij = require_field(e, "images");
        if (!ij.is_array() || static_cast<int>(ij.size()) != source)
            throw ParseError(where + ".images: expected " + std::to_string(source) + " entries");
        std::vector<int> images;
        for (const json& v : ij) {
            if (!v.is_number_integer()) throw ParseError(where + ".images: integer entries only");
            images.push_back(v.get<int>());
        }
        try {
            if (surjections_only)
                Surjection(source, target, images);
            else
                PointedMap(source, target, images);
        } catch (const MalformedMap& bad) {
            throw ParseError(where + ".images: " + bad.what());
        }
        if (!seen.insert({source, target, images}).second)
            throw ParseError(where + ": duplicate action");
        actions.push_back({source, target, images,
                           matrix_from_json(ring, require_field(e, "matrix"),
                                            ranks[static_cast<size_t>(target)],
                                            ranks[static_cast<size_t>(source)],
                                            where + ".matrix")});
    }
    // the table must cover the category exactly once
    for (int a = 0; a <= max_size; ++a) {
        for (int b = 0; b <= max_size; ++b) {
            if (surjections_only) {
                if (b > a) continue;
                for (const Surjection& s : enumerate_surjections(a, b))
                    if (!seen.contains({a, b, s.images()}))
                        throw ParseError("missing action for surjection " +
                                         s.as_pointed_map().to_string());
            } else {
                for (const PointedMap& s : enumerate_pointed_maps(a, b))
                    if (!seen.contains({a, b, s.images()}))
                        throw ParseError("missing action for map " + s.to_string());
            }
        }
    }
    std::sort(actions.begin(), actions.end(), [](const auto& x, const auto& y) {
        return std::tie(x.source, x.target, x.images) < std::tie(y.source, y.target, y.images);
    });
    return actions;
}

class table_action_provider final : public ActionProvider {
  public:
    table_action_provider(std::map<ActionKey, ExactMatrix> table) : table_(std::move(table)) {}

    ExactMatrix compute(const PointedMap& f) const override {
        const auto it = table_.find({f.source_size(), f.target_size(), f.images()});
        if (it == table_.end())
            throw ParseError("spec table has no action for " + f.to_string());
        return it->second;
    }

  private:
    std::map<ActionKey, ExactMatrix> table_;
};

}  // namespace

FunctorSpec parse_functor_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& bad) {
        throw ParseError("JSON parse error at byte " + std::to_string(bad.byte) + ": " +
                         bad.what());
    }
    if (!j.is_object()) throw ParseError("spec must be a JSON object");

    const json& ring_field = require_field(j, "ring");
    if (!ring_field.is_string()) throw ParseError("field 'ring': expected \"Q\", \"Z\" or \"Fp:<p>\"");
    RingSpec ring = RingSpec::rationals();
    try {
        ring = RingSpec::from_name(ring_field.get<std::string>());
    } catch (const WrongRing& bad) {
        throw ParseError(std::string("field 'ring': ") + bad.what());
    }
    const int max_size = require_int(j, "N", 0, kSizeBudget);
    const json& kind_field = require_field(j, "kind");
    if (!kind_field.is_string()) throw ParseError("field 'kind': expected a string");
    const std::string kind = kind_field.get<std::string>();

    FunctorSpec spec{ring, max_size, kind, 0, 0, 0, {}, {}};
    if (kind == "constant") {
        check_fields(j, {"N", "kind", "rank", "ring"});
        spec.constant_rank = require_int(j, "rank", 0, 1 << 20);
    } else if (kind == "ind_constant") {
        check_fields(j, {"N", "kind", "ring"});
    } else if (kind == "P" || kind == "P_le") {
        check_fields(j, {"N", "d", "kind", "n", "ring"});
        spec.jet_count = require_int(j, "n", 1, 8);
        spec.poly_degree = require_int(j, "d", 0, 8);
    } else if (kind == "ind" || kind == "explicit") {
        check_fields(j, {"N", "actions", "kind", "ranks", "ring"});
        spec.ranks = parse_ranks(j, max_size);
        spec.actions = parse_actions(j, ring, spec.ranks, max_size, kind == "ind");
    } else {
        throw ParseError("unknown kind '" + kind + "'");
    }
    return spec;
}

std::string serialize_functor_spec(const FunctorSpec& spec) {
    json j;
    j["ring"] = spec.ring.name();
    j["N"] = spec.max_size;
    j["kind"] = spec.kind;
    if (spec.kind == "constant") {
        j["rank"] = spec.constant_rank;
    } else if (spec.kind == "P" || spec.kind == "P_le") {
        j["n"] = spec.jet_count;
        j["d"] = spec.poly_degree;
    } else if (spec.kind == "ind" || spec.kind == "explicit") {
        j["ranks"] = spec.ranks;
        std::vector<const FunctorSpec::ActionEntry*> order;
        for (const auto& e : spec.actions) order.push_back(&e);
        std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
            return std::tie(x->source, x->target, x->images) <
                   std::tie(y->source, y->target, y->images);
        });
        json actions = json::array();
        for (const auto* e : order) {
            json entry;
            entry["source"] = e->source;
            entry["target"] = e->target;
            entry["images"] = e->images;
            entry["matrix"] = matrix_to_json(spec.ring, e->matrix);
            actions.push_back(std::move(entry));
        }
        j["actions"] = std::move(actions);
    }
    return j.dump(2) + "\n";
}

FunctorSpec read_functor_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_functor_spec(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw ParseError("short write to '" + path + "'");
}

FunctorData functor_from_spec(const FunctorSpec& spec) {
    if (spec.kind == "constant") return constant_functor(spec.ring, spec.max_size, spec.constant_rank);
    if (spec.kind == "ind_constant") return ind_constant(spec.ring, spec.max_size);
    if (spec.kind == "P") return build_P(spec.ring, spec.jet_count, spec.poly_degree, spec.max_size);
    if (spec.kind == "P_le")
        return build_P_le(spec.ring, spec.jet_count, spec.poly_degree, spec.max_size);

    std::map<ActionKey, ExactMatrix> table;
    for (const auto& e : spec.actions) table.emplace(ActionKey{e.source, e.target, e.images}, e.matrix);
    if (spec.kind == "ind") {
        SurjFunctorData f(spec.ring, spec.max_size, spec.ranks, [&](const Surjection& s) {
            const auto it = table.find({s.source_size(), s.target_size(), s.images()});
            if (it == table.end())
                throw ParseError("spec table has no action for " + s.as_pointed_map().to_string());
            return it->second;
        });
        return ind(f, spec.max_size);
    }
    if (spec.kind == "explicit")
        return FunctorData(spec.ring, spec.max_size, spec.ranks,
                           std::make_shared<table_action_provider>(std::move(table)));
    throw ParseError("unknown kind '" + spec.kind + "'");
}

FunctorSpec spec_from_surj_functor(const SurjFunctorData& f) {
    FunctorSpec spec{f.ring(), f.max_size(), "ind", 0, 0, 0, f.ranks(), {}};
    for (int a = 0; a <= f.max_size(); ++a)
        for (int b = 0; b <= a; ++b)
            for (const Surjection& s : enumerate_surjections(a, b))
                spec.actions.push_back({a, b, s.images(), f.action(s)});
    return spec;
}

}  // namespace excal
