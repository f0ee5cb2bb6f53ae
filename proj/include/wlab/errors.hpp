#ifndef WLAB_ERRORS_HPP
#define WLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wlab {

// Base class for all library errors. Every failure mode that callers are
// expected to handle has its own type below; anything else is a plain
// std::logic_error style bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WLAB_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                       \
    public:                                                            \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

WLAB_DEFINE_ERROR(SingularityOnPath);
WLAB_DEFINE_ERROR(SingularityOnLine);
WLAB_DEFINE_ERROR(SingularityOnLevel);
WLAB_DEFINE_ERROR(SingularPoint);
WLAB_DEFINE_ERROR(NoConvergence);
WLAB_DEFINE_ERROR(MultipleSingularities);
WLAB_DEFINE_ERROR(ZeroOnPath);
WLAB_DEFINE_ERROR(AliasingDetected);
WLAB_DEFINE_ERROR(NotExact);
WLAB_DEFINE_ERROR(InsufficientJetOrder);
WLAB_DEFINE_ERROR(BranchPointOnGrid);
WLAB_DEFINE_ERROR(NonIntegerDegree);
WLAB_DEFINE_ERROR(NotAGraph);
WLAB_DEFINE_ERROR(ZeroVerticalFlux);
WLAB_DEFINE_ERROR(PeriodSolveFailed);
WLAB_DEFINE_ERROR(PoleCollision);
WLAB_DEFINE_ERROR(BlowupDetected);
WLAB_DEFINE_ERROR(TrackLost);
WLAB_DEFINE_ERROR(BranchObstruction);
WLAB_DEFINE_ERROR(BadInput);

#undef WLAB_DEFINE_ERROR

} // namespace wlab

#endif
