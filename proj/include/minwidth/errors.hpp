#ifndef MINWIDTH_ERRORS_HPP
#define MINWIDTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace minwidth {

// Root of every error raised by the library. Callers that only need a
// message can catch this; the concrete type names the failure mode.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MINWIDTH_DEFINE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  };

MINWIDTH_DEFINE_ERROR(DegenerateInput)
MINWIDTH_DEFINE_ERROR(InvalidPolygon)
MINWIDTH_DEFINE_ERROR(DomainError)
MINWIDTH_DEFINE_ERROR(EmptyBody)
MINWIDTH_DEFINE_ERROR(CapsOverlap)
MINWIDTH_DEFINE_ERROR(NumericalFailure)
MINWIDTH_DEFINE_ERROR(MeshFailure)
MINWIDTH_DEFINE_ERROR(SolverDiverged)
MINWIDTH_DEFINE_ERROR(NoDirichlet)
MINWIDTH_DEFINE_ERROR(DegenerateEndpoint)
MINWIDTH_DEFINE_ERROR(QuadratureNotConverged)
MINWIDTH_DEFINE_ERROR(IoError)
MINWIDTH_DEFINE_ERROR(UnknownExperiment)
MINWIDTH_DEFINE_ERROR(ConfigInvalid)

#undef MINWIDTH_DEFINE_ERROR

}  // namespace minwidth

#endif  // MINWIDTH_ERRORS_HPP
