#pragma once

#include <stdexcept>
#include <string>

namespace rdc {

enum class errc {
  not_a_prefix,
  alphabet_mismatch,
  empty_family,
  not_monotone,
  not_rr_healthy,
  not_rc,
  not_srd_healthy,
  not_h_healthy,
  not_n_healthy,
  peri_mentions_final_state,
  post_constrains_refusal,
  not_productive,
  merge_not_symmetric,
  syntax_error,
  undeclared,
  alphabet_too_large,
  unknown_suite,
  invalid_argument,
};

const char* errc_name(errc e);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

class syntax_error : public error {
 public:
  syntax_error(int line, int col, const std::string& expected)
      : error(errc::syntax_error, std::to_string(line) + ":" + std::to_string(col) +
                                      ": expected " + expected),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

}  // namespace rdc
