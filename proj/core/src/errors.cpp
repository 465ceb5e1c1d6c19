#include "geomca/errors.hpp"

namespace geomca {

const char* to_string(InputErrorKind kind) noexcept {
    switch (kind) {
        case InputErrorKind::FileNotFound: return "file-not-found";
        case InputErrorKind::Empty: return "empty";
        case InputErrorKind::DimensionMismatch: return "dimension-mismatch";
        case InputErrorKind::NonFinite: return "non-finite";
        case InputErrorKind::Malformed: return "malformed";
        case InputErrorKind::BadHeader: return "bad-header";
        case InputErrorKind::Truncated: return "truncated";
        case InputErrorKind::TrailingBytes: return "trailing-bytes";
    }
    return "unknown";
}

}  // namespace geomca
