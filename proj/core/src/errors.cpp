#include "tsradar/errors.hpp"

#include <utility>

namespace tsradar {

SeriesTooShort::SeriesTooShort(std::string series_id, std::size_t length, std::size_t required,
                               const std::string &what)
    : Error("series '" + series_id + "' too short for " + what + ": length " + std::to_string(length) +
            ", need at least " + std::to_string(required)),
      series_id_(std::move(series_id)), length_(length), required_(required) {
}

} // namespace tsradar
