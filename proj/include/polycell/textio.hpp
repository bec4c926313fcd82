// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_TEXTIO_HPP
#define POLYCELL_TEXTIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace polycell {

/// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double value);

/// Parse a double; throws config_error naming the offending text.
double parse_double(std::string_view text);

/// Parse an unsigned integer; throws config_error.
std::uint64_t parse_u64(std::string_view text);

/// FNV-1a 64-bit digest of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Digest rendered as "fnv1a64:<16 hex digits>".
std::string digest_string(std::string_view bytes);

/// Whole-file read; throws io_error.
std::string read_file(const std::filesystem::path& path);

/// Write content to path via a temporary file and rename, so a crashed run
/// never leaves a torn artifact behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Flat "key = value" text document with '#' comments. Used for config
/// files, manifests, summaries, and the model/surface file formats.
/// Keys may be dotted (section.key); order is preserved on serialize.
class KvDocument {
public:
    struct Entry {
        std::string key;
        std::string value;
        std::size_t line = 0;
    };

    KvDocument() = default;

    /// Parse; throws config_error with a line number on malformed input.
    static KvDocument parse(std::string_view text);

    void set(std::string_view key, std::string_view value);
    void set(std::string_view key, double value);  // 17 significant digits
    void set(std::string_view key, std::uint64_t value);

    /// nullptr when the key is absent.
    const std::string* find(std::string_view key) const;

    const std::vector<Entry>& entries() const { return entries_; }

    std::string serialize() const;

private:
    std::vector<Entry> entries_;
};

}  // namespace polycell

#endif
