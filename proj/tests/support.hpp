// Shared helpers for the test binaries: fixture paths, scratch directories,
// CLI invocation, small output parsers, and a strict-enough XML checker.
#pragma once

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace testsupport {

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("hexeval_" + tag + "_" + std::to_string(counter_++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string str() const { return path_.string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

/// Runs the installed CLI binary with the given argument string.
inline CliResult run_cli(const std::string& args) {
    const std::string command = std::string(HEXEVAL_BIN) + " " + args + " 2>&1";
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.output.append(buffer, n);
    }
    const int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

/// Parses "key value" output lines; the key is everything before the last
/// space, so "class a rec 0.5" lands under "class a rec".
inline std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        const std::size_t space = line.rfind(' ');
        if (space != std::string::npos && space > 0) {
            kv[line.substr(0, space)] = line.substr(space + 1);
        }
        start = end + 1;
    }
    return kv;
}

/// Drops every line containing the needle; used to compare reports modulo
/// timing fields.
inline std::string strip_lines(const std::string& text, const std::string& needle) {
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        const bool last = end == std::string::npos;
        if (last) end = text.size();
        const std::string line = text.substr(start, end - start);
        if (line.find(needle) == std::string::npos) {
            out += line;
            if (!last) out += '\n';
        }
        start = end + 1;
    }
    return out;
}

namespace detail {

inline bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == ':' || c == '.';
}

inline bool valid_text_chunk(const std::string& xml, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (xml[i] == '<' || xml[i] == '>') return false;
        if (xml[i] == '&') {
            const std::size_t semi = xml.find(';', i);
            if (semi == std::string::npos || semi - i > 6) return false;
            const std::string entity = xml.substr(i, semi - i + 1);
            if (entity != "&amp;" && entity != "&lt;" && entity != "&gt;" &&
                entity != "&quot;" && entity != "&apos;") {
                return false;
            }
            i = semi;
        }
    }
    return true;
}

} // namespace detail

/// Minimal well-formedness check: one root element, balanced matching tags,
/// quoted attributes, no stray <, >, or unescaped & in text content.
inline bool xml_well_formed(const std::string& xml) {
    std::vector<std::string> stack;
    bool root_seen = false;
    std::size_t i = 0;

    if (xml.rfind("<?xml", 0) == 0) {
        i = xml.find("?>");
        if (i == std::string::npos) return false;
        i += 2;
    }
    while (i < xml.size()) {
        const std::size_t open = xml.find('<', i);
        const std::size_t text_end = open == std::string::npos ? xml.size() : open;
        if (!detail::valid_text_chunk(xml, i, text_end)) return false;
        if (open == std::string::npos) break;
        if (stack.empty()) {
            for (std::size_t t = i; t < open; ++t) {
                if (!std::isspace(static_cast<unsigned char>(xml[t]))) return false;
            }
        }

        if (xml.compare(open, 4, "<!--") == 0) {
            const std::size_t close = xml.find("-->", open + 4);
            if (close == std::string::npos) return false;
            i = close + 3;
            continue;
        }
        if (xml.compare(open, 2, "</") == 0) {
            std::size_t p = open + 2, name_start = p;
            while (p < xml.size() && detail::is_name_char(xml[p])) ++p;
            if (p == name_start || p >= xml.size() || xml[p] != '>') return false;
            if (stack.empty() || stack.back() != xml.substr(name_start, p - name_start)) {
                return false;
            }
            stack.pop_back();
            i = p + 1;
            continue;
        }

        std::size_t p = open + 1, name_start = p;
        while (p < xml.size() && detail::is_name_char(xml[p])) ++p;
        if (p == name_start) return false;
        const std::string name = xml.substr(name_start, p - name_start);
        if (stack.empty() && root_seen) return false; // second root
        bool self_closing = false;
        while (p < xml.size()) {
            while (p < xml.size() && std::isspace(static_cast<unsigned char>(xml[p]))) ++p;
            if (p >= xml.size()) return false;
            if (xml[p] == '>') {
                ++p;
                break;
            }
            if (xml.compare(p, 2, "/>") == 0) {
                self_closing = true;
                p += 2;
                break;
            }
            std::size_t attr_start = p;
            while (p < xml.size() && detail::is_name_char(xml[p])) ++p;
            if (p == attr_start || p >= xml.size() || xml[p] != '=') return false;
            ++p;
            if (p >= xml.size() || (xml[p] != '"' && xml[p] != '\'')) return false;
            const char quote = xml[p];
            const std::size_t value_end = xml.find(quote, p + 1);
            if (value_end == std::string::npos) return false;
            if (!detail::valid_text_chunk(xml, p + 1, value_end)) return false;
            p = value_end + 1;
        }
        root_seen = true;
        if (!self_closing) stack.push_back(name);
        i = p;
    }
    return stack.empty() && root_seen;
}

} // namespace testsupport
