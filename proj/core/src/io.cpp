#include "fairseq/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "fairseq/errors.hpp"

namespace fairseq::io {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InvalidArgument("not a decimal number: '" + std::string(text) + "'");
    return v;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_double(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_double_list(std::span<const double> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

void write_sequence(std::ostream& out, const LetterSequence& word, const SequenceHeader& header) {
    out << "# fairseq sequence\n";
    out << "# d: " << header.d.value_or(word.alphabet_size()) << '\n';
    if (!header.kind.empty()) out << "# kind: " << header.kind << '\n';
    if (header.alpha) out << "# alpha: " << format_double_list(*header.alpha) << '\n';
    if (header.C) out << "# C: " << format_double(*header.C) << '\n';
    if (header.C_prime) out << "# C_prime: " << format_double(*header.C_prime) << '\n';
    if (header.x0) out << "# x0: " << format_double_list(*header.x0) << '\n';
    out << "# N: " << word.size() << '\n';
    constexpr std::size_t kPerLine = 100;
    for (std::size_t i = 0; i < word.size(); ++i) {
        out << int(word[i]);
        out << ((i + 1) % kPerLine == 0 || i + 1 == word.size() ? '\n' : ' ');
    }
    if (!out) throw Error("failed to write sequence");
}

SequenceFile read_sequence(std::istream& in) {
    SequenceHeader header;
    std::vector<Letter> letters;
    std::string line;
    int max_letter = 0;
    while (std::getline(in, line)) {
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            const auto body = trim(sv.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) continue;
            const auto key = trim(body.substr(0, colon));
            const auto value = trim(body.substr(colon + 1));
            if (key == "d") header.d = static_cast<std::size_t>(parse_double(value));
            else if (key == "kind") header.kind = std::string(value);
            else if (key == "alpha") header.alpha = parse_double_list(value);
            else if (key == "C") header.C = parse_double(value);
            else if (key == "C_prime") header.C_prime = parse_double(value);
            else if (key == "x0") header.x0 = parse_double_list(value);
            continue;
        }
        std::istringstream tokens{std::string(sv)};
        std::string tok;
        while (tokens >> tok) {
            int v = 0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v < 1 || v > 255)
                throw InvalidArgument("bad letter '" + tok + "'");
            max_letter = std::max(max_letter, v);
            letters.push_back(static_cast<Letter>(v));
        }
    }
    if (in.bad()) throw Error("failed to read sequence");
    std::size_t d = header.d ? *header.d : header.alpha ? header.alpha->size() : std::max(2, max_letter);
    return {header, LetterSequence(d, std::move(letters))};
}

}  // namespace fairseq::io
