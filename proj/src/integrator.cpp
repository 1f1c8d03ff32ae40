#include "regimeflow/integrator.hpp"

namespace regimeflow {

std::string IntegrationError::describe(long step, int stage, int component) {
    std::string msg = "non-finite value during integration";
    if (step >= 0) msg += " at step " + std::to_string(step);
    if (stage > 0) msg += " (RK4 stage " + std::to_string(stage) + ")";
    msg += ", component " + std::to_string(component);
    return msg;
}

}  // namespace regimeflow
