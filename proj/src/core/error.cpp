#include "corridor/core/error.hpp"

namespace corridor {

const char* category_name(ErrorCategory cat) {
    switch (cat) {
        case ErrorCategory::config: return "config-error";
        case ErrorCategory::io: return "io-error";
        case ErrorCategory::contract: return "contract-violation";
        case ErrorCategory::numeric: return "numeric-error";
        case ErrorCategory::window: return "window-error";
        case ErrorCategory::pipeline: return "pipeline-error";
    }
    return "error";
}

}  // namespace corridor
