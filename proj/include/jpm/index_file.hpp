#pragma once

// On-disk index container.
//
//   magic "JPMIDX\0\0", u32 version, u8 back-end tag, alphabet string,
//   u64 record count, then per record: name string, u64 n, payload.
//
// All integers little-endian. A file with another magic or version is
// rejected.

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "jpm/binary_io.hpp"
#include "jpm/core.hpp"
#include "jpm/interval_index.hpp"
#include "jpm/io.hpp"
#include "jpm/prefix_table.hpp"
#include "jpm/wavelet_tree.hpp"

namespace jpm {

enum class index_kind : std::uint8_t { table = 1, wavelet = 2, interval = 3 };

inline const char* to_string(index_kind k) {
    switch (k) {
        case index_kind::table: return "table";
        case index_kind::wavelet: return "wavelet";
        case index_kind::interval: return "interval";
    }
    return "?";
}

inline index_kind parse_index_kind(const std::string& s) {
    if (s == "table") return index_kind::table;
    if (s == "wavelet") return index_kind::wavelet;
    if (s == "interval") return index_kind::interval;
    throw std::invalid_argument("unknown back-end '" + s + "'");
}

struct index_record {
    std::string name;
    std::variant<prefix_table, wavelet_tree, interval_index> index;

    pos_t size() const {
        return std::visit([](const auto& ix) -> pos_t { return ix.size(); }, index);
    }
};

struct index_bundle {
    static constexpr char magic[8] = {'J', 'P', 'M', 'I', 'D', 'X', '\0', '\0'};
    static constexpr std::uint32_t version = 1;

    index_kind kind = index_kind::table;
    alphabet sigma;
    std::vector<index_record> records;

    // All records share `sigma`, which must cover every record.
    static index_bundle build(index_kind kind, const alphabet& sigma,
                              const std::vector<text_record>& texts, bool lazy_interval = false) {
        index_bundle b;
        b.kind = kind;
        b.sigma = sigma;
        if (kind == index_kind::interval && sigma.size() != 2) {
            throw std::invalid_argument("interval index requires binary alphabet (found " +
                                        std::to_string(sigma.size()) + " symbols)");
        }
        for (const auto& t : texts) {
            encoded_text text = encoded_text::encode(t.sequence, sigma);
            switch (kind) {
                case index_kind::table:
                    b.records.push_back({t.name, prefix_table(text)});
                    break;
                case index_kind::wavelet:
                    b.records.push_back({t.name, wavelet_tree(text)});
                    break;
                case index_kind::interval:
                    b.records.push_back({t.name, lazy_interval ? interval_index::build_lazy(text)
                                                               : interval_index::build_eager(text)});
                    break;
            }
        }
        return b;
    }

    void save(std::ostream& out) const {
        out.write(magic, sizeof magic);
        bin::write<std::uint32_t>(out, version);
        bin::write<std::uint8_t>(out, static_cast<std::uint8_t>(kind));
        bin::write_string(out, sigma.symbols());
        bin::write<std::uint64_t>(out, records.size());
        for (const auto& r : records) {
            bin::write_string(out, r.name);
            bin::write<std::uint64_t>(out, r.size());
            std::visit([&](const auto& ix) { ix.save(out); }, r.index);
        }
        if (!out) {
            throw io_error("failed to write index");
        }
    }

    static index_bundle load(std::istream& in) {
        char got[sizeof magic];
        in.read(got, sizeof got);
        if (!in || !std::equal(got, got + sizeof got, magic)) {
            throw format_error("not an index file (bad magic)");
        }
        auto v = bin::read<std::uint32_t>(in);
        if (v != version) {
            throw format_error("unsupported index version " + std::to_string(v) + " (expected " +
                               std::to_string(version) + ")");
        }
        index_bundle b;
        auto tag = bin::read<std::uint8_t>(in);
        if (tag < 1 || tag > 3) {
            throw format_error("unknown back-end tag " + std::to_string(tag));
        }
        b.kind = static_cast<index_kind>(tag);
        try {
            b.sigma = alphabet(bin::read_string(in, 256));
        } catch (const std::invalid_argument& e) {
            throw format_error(std::string("bad alphabet: ") + e.what());
        }
        auto count = bin::read<std::uint64_t>(in);
        if (count > (1u << 24)) {
            throw format_error("implausible record count");
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            std::string name = bin::read_string(in, 1u << 20);
            auto n = bin::read<std::uint64_t>(in);
            index_record r{std::move(name), prefix_table{}};
            switch (b.kind) {
                case index_kind::table: r.index = prefix_table::load(in); break;
                case index_kind::wavelet: r.index = wavelet_tree::load(in); break;
                case index_kind::interval: r.index = interval_index::load(in); break;
            }
            std::size_t dim = std::visit(
                [&](const auto& ix) -> std::size_t {
                    if constexpr (std::is_same_v<std::decay_t<decltype(ix)>, interval_index>) {
                        return 2;
                    } else {
                        return ix.sigma();
                    }
                },
                r.index);
            if (r.size() != n || dim != b.sigma.size()) {
                throw format_error("record header disagrees with payload");
            }
            b.records.push_back(std::move(r));
        }
        return b;
    }

    void save_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw io_error("cannot open '" + path + "' for writing");
        }
        save(out);
    }

    static index_bundle load_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw io_error("cannot open '" + path + "'");
        }
        return load(in);
    }
};

}  // namespace jpm
