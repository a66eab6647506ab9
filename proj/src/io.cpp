#include "fgv/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace fgv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

Sequence parse_sequence_csv(std::string_view text, std::string label) {
    std::vector<Rational> values;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected two columns");
        }
        auto first = trim(line.substr(0, comma));
        auto second = trim(line.substr(comma + 1));
        if (!header_seen) {
            header_seen = true;
            if (!parse_rational(first)) continue;  // header row
        }
        auto n = parse_rational(first);
        auto v = parse_rational(second);
        if (!n || !v) throw std::runtime_error("csv line " + std::to_string(line_no) + ": not a number");
        if (*n != Rational(static_cast<long>(values.size() + 1))) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": indices must run 1, 2, 3, ...");
        }
        values.push_back(*v);
    }
    if (values.empty()) throw std::runtime_error("csv: no data rows");
    return Sequence(std::move(values), std::move(label));
}

Sequence read_sequence_csv(const std::filesystem::path& path, std::string label) {
    return parse_sequence_csv(read_text_file(path), std::move(label));
}

std::string sequence_csv(const Sequence& s, std::string_view value_column) {
    std::string out = "n,";
    out += value_column;
    out += '\n';
    for (std::size_t n = 1; n <= s.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += s.format(n);
        out += '\n';
    }
    return out;
}

std::string pairs_csv(std::string_view x_name, std::string_view y_name,
                      const std::vector<std::pair<double, double>>& rows) {
    std::string out;
    out += x_name;
    out += ',';
    out += y_name;
    out += '\n';
    for (const auto& [x, y] : rows) {
        out += to_string_roundtrip(x);
        out += ',';
        out += to_string_roundtrip(y);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return ss.str();
}

}  // namespace fgv
