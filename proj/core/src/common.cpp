#include "neretin/common.hpp"

namespace neretin {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::degree_mismatch: return "DegreeMismatch";
    case Errc::not_transitive: return "NotTransitive";
    case Errc::not_subgroup: return "NotSubgroup";
    case Errc::tuple_arity_too_large: return "TupleArityTooLarge";
    case Errc::omega_too_small: return "OmegaTooSmall";
    case Errc::no_witness: return "NoWitness";
    case Errc::degree_too_large: return "DegreeTooLarge";
    case Errc::signature_mismatch: return "SignatureMismatch";
    case Errc::leaf_not_present: return "LeafNotPresent";
    case Errc::depth_limit: return "DepthLimit";
    case Errc::prefix_too_short: return "PrefixTooShort";
    case Errc::empty_clopen: return "EmptyClopen";
    case Errc::not_in_level_subgroup: return "NotInLevelSubgroup";
    case Errc::bad_levels: return "BadLevels";
    case Errc::bad_prefix: return "BadPrefix";
    case Errc::targets_not_disjoint: return "TargetsNotDisjoint";
    case Errc::point_inside_target: return "PointInsideTarget";
    case Errc::resource_exhausted: return "ResourceExhausted";
    case Errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

} // namespace neretin
