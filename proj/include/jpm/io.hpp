#pragma once

// Text loaders: plain files (every byte is a character, line breaks dropped)
// and FASTA (records split on '>' headers, sequence upper-cased).

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jpm {

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct text_record {
    std::string name;
    std::string sequence;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "'");
    }
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw io_error("error reading '" + path + "'");
    }
    return data;
}

inline std::string parse_plain(std::string_view data) {
    std::string out;
    out.reserve(data.size());
    for (char ch : data) {
        if (ch != '\n' && ch != '\r') {
            out.push_back(ch);
        }
    }
    return out;
}

inline std::vector<text_record> parse_fasta(std::string_view data) {
    std::vector<text_record> records;
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::size_t eol = data.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = data.size();
        }
        std::string_view line = data.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == ';') {
            continue;
        }
        if (line.front() == '>') {
            std::string_view header = line.substr(1);
            std::size_t ws = header.find_first_of(" \t");
            records.push_back({std::string(header.substr(0, ws)), {}});
            continue;
        }
        if (records.empty()) {
            records.push_back({"", {}});
        }
        for (char ch : line) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                records.back().sequence.push_back(
                    static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
            }
        }
    }
    return records;
}

inline std::string load_plain(const std::string& path) {
    std::string text = parse_plain(read_file(path));
    if (text.empty()) {
        throw io_error("'" + path + "' contains no text");
    }
    return text;
}

// Records with empty sequences are dropped; a file with no sequence data is
// an error.
inline std::vector<text_record> load_fasta(const std::string& path, bool concatenate = false) {
    std::vector<text_record> records = parse_fasta(read_file(path));
    std::erase_if(records, [](const text_record& r) { return r.sequence.empty(); });
    if (records.empty()) {
        throw io_error("'" + path + "' contains no sequence data");
    }
    if (concatenate && records.size() > 1) {
        text_record joined{records.front().name, {}};
        for (const auto& r : records) {
            joined.sequence += r.sequence;
        }
        records = {std::move(joined)};
    }
    return records;
}

}  // namespace jpm
