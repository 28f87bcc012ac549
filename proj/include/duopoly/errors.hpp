#pragma once

#include <stdexcept>
#include <string>

namespace duopoly {

// One distinct code per failure kind; the CLI uses these as exit codes.
enum class Errc : int {
  ordering_violation = 3,
  non_positive_choke = 4,
  singleton_set = 5,
  degenerate_map = 6,
  negative_input = 7,
  invalid_parameters = 8,
  not_chaotic_regime = 9,
  piece_count_not_power_of_two = 10,
  not_a_cycle = 11,
  not_classified = 12,
  not_square_grid = 13,
  empty_sweep = 14,
  zero_slope = 15,
  io_failure = 16,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::ordering_violation: return "OrderingViolation";
    case Errc::non_positive_choke: return "NonPositiveChoke";
    case Errc::singleton_set: return "SingletonSet";
    case Errc::degenerate_map: return "DegenerateMap";
    case Errc::negative_input: return "NegativeInput";
    case Errc::invalid_parameters: return "InvalidParameters";
    case Errc::not_chaotic_regime: return "NotChaoticRegime";
    case Errc::piece_count_not_power_of_two: return "PieceCountNotPowerOfTwo";
    case Errc::not_a_cycle: return "NotACycle";
    case Errc::not_classified: return "NotClassified";
    case Errc::not_square_grid: return "NotSquareGrid";
    case Errc::empty_sweep: return "EmptySweep";
    case Errc::zero_slope: return "ZeroSlopeEncountered";
    case Errc::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

template <Errc C>
class CodedError : public Error {
 public:
  explicit CodedError(const std::string& what) : Error(C, what) {}
};

using OrderingViolation = CodedError<Errc::ordering_violation>;
using NonPositiveChoke = CodedError<Errc::non_positive_choke>;
using SingletonSet = CodedError<Errc::singleton_set>;
using DegenerateMap = CodedError<Errc::degenerate_map>;
using NegativeInput = CodedError<Errc::negative_input>;
using InvalidParameters = CodedError<Errc::invalid_parameters>;
using NotChaoticRegime = CodedError<Errc::not_chaotic_regime>;
using PieceCountNotPowerOfTwo = CodedError<Errc::piece_count_not_power_of_two>;
using NotACycle = CodedError<Errc::not_a_cycle>;
using NotClassified = CodedError<Errc::not_classified>;
using NotSquareGrid = CodedError<Errc::not_square_grid>;
using EmptySweep = CodedError<Errc::empty_sweep>;
using ZeroSlopeEncountered = CodedError<Errc::zero_slope>;
using IoFailure = CodedError<Errc::io_failure>;

}  // namespace duopoly
