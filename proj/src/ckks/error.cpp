#include "bicrypt/error.hpp"

namespace bicrypt {

const char* to_string(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Parameter: return "parameter";
        case ErrorCategory::Capacity: return "capacity";
        case ErrorCategory::Usage: return "usage";
        case ErrorCategory::DepthBudget: return "depth-budget";
        case ErrorCategory::Shape: return "shape";
        case ErrorCategory::Index: return "index";
        case ErrorCategory::Ingestion: return "ingestion";
    }
    return "unknown";
}

}  // namespace bicrypt
