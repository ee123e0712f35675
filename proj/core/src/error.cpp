#include "scalewise/error.hpp"

#include <utility>

namespace scalewise {

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

}  // namespace scalewise
