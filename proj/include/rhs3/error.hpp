#ifndef RHS3_ERROR_HPP
#define RHS3_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rhs3 {

enum class errc {
  degree_mismatch,
  order_bound_exceeded,
  not_an_action,
  not_normal,
  not_prime,
  not_a_2group,
  budget_exceeded,
  invalid_cocycle,
  subgroup_mismatch,
  bad_parameter,
  not_a_pgroup,
  wrong_type,
  not_central_cyclic,
  even_d,
  bad_primes,
  bad_invariant_factors,
  unrecognized,
  syntax_error,
  elaboration_error,
  internal,
};

// All library failures throw this; the CLI maps `code` onto exit codes.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::order_bound_exceeded: return "OrderBoundExceeded";
    case errc::not_an_action: return "NotAnAction";
    case errc::not_normal: return "NotNormal";
    case errc::not_prime: return "NotPrime";
    case errc::not_a_2group: return "NotA2Group";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::invalid_cocycle: return "InvalidCocycle";
    case errc::subgroup_mismatch: return "SubgroupMismatch";
    case errc::bad_parameter: return "BadParameter";
    case errc::not_a_pgroup: return "NotAPGroup";
    case errc::wrong_type: return "WrongType";
    case errc::not_central_cyclic: return "NotCentralCyclic";
    case errc::even_d: return "EvenD";
    case errc::bad_primes: return "BadPrimes";
    case errc::bad_invariant_factors: return "BadInvariantFactors";
    case errc::unrecognized: return "Unrecognized";
    case errc::syntax_error: return "SyntaxError";
    case errc::elaboration_error: return "ElaborationError";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace rhs3

#endif
