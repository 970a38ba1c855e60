#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexicluster {

// Every failure the library reports carries one of these codes so callers
// (and tests) can tell error kinds apart without matching message text.
enum class Errc {
    duplicate_doc_id,
    header_count_mismatch,
    non_positive_integer,
    malformed_line,
    duplicate_feature,
    feature_out_of_range,
    unknown_category,
    duplicate_sense_rank,
    unknown_word_id,
    invalid_argument,
    invalid_label,
    absent_label,
    io_failure,
    job_failed,
    unsplittable,
    exhausted,
    unlabeled_document,
    empty_input,
    mismatch,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace lexicluster
