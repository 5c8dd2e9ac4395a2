#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairseq/sequences.hpp"

namespace fairseq::io {

// Shortest decimal that parses back to the same double.
std::string format_double(double value);
// Exact parse of a decimal; throws InvalidArgument on trailing garbage.
double parse_double(std::string_view text);
// Comma-separated decimals.
std::vector<double> parse_double_list(std::string_view text);
std::string format_double_list(std::span<const double> values);

struct SequenceHeader {
    std::optional<std::size_t> d;
    std::string kind;
    std::optional<std::vector<double>> alpha;
    std::optional<double> C;
    std::optional<double> C_prime;
    std::optional<std::vector<double>> x0;
};

struct SequenceFile {
    SequenceHeader header;
    LetterSequence word{2};
};

// "# key: value" header lines followed by whitespace-separated letters.
void write_sequence(std::ostream& out, const LetterSequence& word, const SequenceHeader& header);

// The alphabet size is taken from the header (d or alpha), else from the largest letter
// (at least 2). Throws InvalidArgument on malformed content.
SequenceFile read_sequence(std::istream& in);

}  // namespace fairseq::io
