#pragma once

#include <stdexcept>
#include <string>

namespace lcmq {

// Raised when a local gramian is too ill-conditioned to trust. Carries the
// index of the cover's center node so callers can report which stencil failed.
class SingularGramianError : public std::runtime_error {
public:
    SingularGramianError(int center, double rcond)
        : std::runtime_error("singular local gramian at node " + std::to_string(center) +
                             " (reciprocal condition estimate " + std::to_string(rcond) + ")"),
          center_index(center),
          rcond_estimate(rcond) {}

    int center_index;
    double rcond_estimate;
};

class SolveFailure : public std::runtime_error {
public:
    explicit SolveFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lcmq
