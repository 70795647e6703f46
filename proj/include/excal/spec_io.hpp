#pragma once

#include <string>
#include <vector>

#include "excal/functor_data.hpp"
#include "excal/matrix.hpp"
#include "excal/ring.hpp"

namespace excal {

// On-disk description of a functor, round-trippable through JSON.  Kinds:
//   "constant"      payload: rank
//   "ind_constant"  no payload
//   "P" / "P_le"    payload: n (jet count), d (degree)
//   "ind"           payload: ranks of a surjection functor plus one matrix
//                   per surjection; the functor served is ind of it
//   "explicit"      payload: ranks plus one matrix per pointed map
// Scalars are exact strings over Q and Z ("a/b", "-7") and plain residues
// over a prime field.  Canonical form has sorted keys, two-space indent, and
// actions ordered by (source, target, images); serialize always emits it.
struct FunctorSpec {
    RingSpec ring;
    int max_size = 0;
    std::string kind;
    int constant_rank = 0;
    int jet_count = 0;
    int poly_degree = 0;
    std::vector<int> ranks;
    struct ActionEntry {
        int source;
        int target;
        std::vector<int> images;
        ExactMatrix matrix;
    };
    std::vector<ActionEntry> actions;
};

// Throws ParseError with a byte position for malformed JSON and with the
// offending field name for structural problems (unknown kind, bad scalar,
// matrix shape off against the declared ranks).
FunctorSpec parse_functor_spec(const std::string& text);

std::string serialize_functor_spec(const FunctorSpec& spec);

// Reads and parses a spec file; IO failures surface as ParseError too.
FunctorSpec read_functor_spec_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

// Instantiates the functor a spec describes.  For "ind" the surjection
// functor is built first, so an incomplete action table raises ParseError
// and a non-functorial one raises NotAFunctor right here; "explicit" tables
// are served lazily and misses surface when an action is first requested.
FunctorData functor_from_spec(const FunctorSpec& spec);

// "ind"-kind spec recording the given surjection functor exactly.
FunctorSpec spec_from_surj_functor(const SurjFunctorData& f);

}  // namespace excal
