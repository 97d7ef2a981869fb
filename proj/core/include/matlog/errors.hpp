#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace matlog {

enum class errc {
  unreadable_word,
  arity_mismatch,
  unbalanced_parentheses,
  signature_mismatch,
  unassigned_variable,
  unbound_metavariable,
  bad_path,
  bad_parameter,
  rank_exceeded,
  out_of_range,
  budget_exceeded,
  universe_too_large,
  too_large,
  too_many_variables,
  not_boolean,
};

const char* errc_name(errc code);

/// Library-wide error type. `position`, when present, is a byte offset into
/// the offending input text.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  errc code() const { return code_; }
  std::optional<std::size_t> position() const { return position_; }

 private:
  errc code_;
  std::optional<std::size_t> position_;
};

[[noreturn]] inline void fail(errc code, const std::string& message,
                              std::optional<std::size_t> position = std::nullopt) {
  throw error(code, message, position);
}

}  // namespace matlog
