#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <zlib.h>

#include "vred/core.hpp"

namespace vred {

// ---------------------------------------------------------------------------
// Number formatting/parsing. std::to_chars emits the shortest representation
// that round-trips, which keeps output files byte-deterministic.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

inline bool parse_double(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

// ---------------------------------------------------------------------------
// File slurping with transparent gzip (detected by extension).
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw io_error("file not found: " + path.string());
    if (path.extension() == ".gz") {
        gzFile gz = gzopen(path.string().c_str(), "rb");
        if (!gz) throw io_error("cannot open gzip file: " + path.string());
        std::string out;
        char buf[1 << 16];
        int n;
        while ((n = gzread(gz, buf, sizeof(buf))) > 0) out.append(buf, static_cast<size_t>(n));
        bool bad = n < 0;
        gzclose(gz);
        if (bad) throw io_error("gzip read error: " + path.string());
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

// ---------------------------------------------------------------------------
// Minimal CSV: no quoting (none of the formats here need it), '\n' or '\r\n'
// line ends, '.' decimal separator.
// ---------------------------------------------------------------------------

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

/// Iterates lines of an in-memory CSV buffer. Keeps a 1-based line counter.
class csv_lines {
public:
    explicit csv_lines(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        while (pos_ < text_.size()) {
            size_t eol = text_.find('\n', pos_);
            std::string_view raw = (eol == std::string_view::npos)
                                       ? text_.substr(pos_)
                                       : text_.substr(pos_, eol - pos_);
            pos_ = (eol == std::string_view::npos) ? text_.size() : eol + 1;
            ++line_no_;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (raw.empty()) continue;
            line = raw;
            return true;
        }
        return false;
    }

    std::int64_t line_no() const { return line_no_; }

private:
    std::string_view text_;
    size_t pos_ = 0;
    std::int64_t line_no_ = 0;
};

/// Buffered CSV writer.
class csv_writer {
public:
    explicit csv_writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw io_error("cannot open for writing: " + path.string());
    }

    void raw_line(std::string_view line) {
        out_.write(line.data(), static_cast<std::streamsize>(line.size()));
        out_.put('\n');
    }

    template <class... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((append_field(first, fields), first = false), ...);
        out_.put('\n');
    }

private:
    void append_field(bool first, const std::string& f) { sep(first); out_ << f; }
    void append_field(bool first, std::string_view f) { sep(first); out_ << f; }
    void append_field(bool first, const char* f) { sep(first); out_ << f; }
    void append_field(bool first, double f) { sep(first); out_ << format_double(f); }
    void append_field(bool first, std::int64_t f) { sep(first); out_ << f; }
    void append_field(bool first, int f) { sep(first); out_ << f; }
    void sep(bool first) {
        if (!first) out_.put(',');
    }

    std::ofstream out_;
};

}  // namespace vred
