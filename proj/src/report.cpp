#include "rdc/error.hpp"

namespace rdc {

const char* errc_name(errc e) {
  switch (e) {
    case errc::not_a_prefix: return "NotAPrefix";
    case errc::alphabet_mismatch: return "AlphabetMismatch";
    case errc::empty_family: return "EmptyFamily";
    case errc::not_monotone: return "NotMonotone";
    case errc::not_rr_healthy: return "NotRRHealthy";
    case errc::not_rc: return "NotRC";
    case errc::not_srd_healthy: return "NotSRDHealthy";
    case errc::not_h_healthy: return "NotHHealthy";
    case errc::not_n_healthy: return "NotNHealthy";
    case errc::peri_mentions_final_state: return "PeriMentionsFinalState";
    case errc::post_constrains_refusal: return "PostConstrainsRefusal";
    case errc::not_productive: return "NotProductive";
    case errc::merge_not_symmetric: return "MergeNotSymmetric";
    case errc::syntax_error: return "SyntaxError";
    case errc::undeclared: return "Undeclared";
    case errc::alphabet_too_large: return "AlphabetTooLarge";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rdc
