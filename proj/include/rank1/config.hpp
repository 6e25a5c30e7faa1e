#pragma once

#include <map>
#include <optional>
#include <string>

#include "rank1/ambient.hpp"

namespace rank1 {

// All runs draw from one seed; the default is fixed, not entropy.
constexpr std::uint64_t kDefaultSeed = 0x5eed1ab5eed1ab01ULL;

// Flat key=value configuration; CLI flags are merged over file values.
// Unknown keys are rejected during validation.
struct RunConfig {
    std::map<std::string, std::string> kv;

    static RunConfig from_file(const std::string& path);      // key=value or JSON
    static RunConfig from_text(const std::string& text);      // key=value lines
    static RunConfig from_json_text(const std::string& text); // flat JSON object

    void merge_flag(const std::string& key, const std::string& value);  // flag wins
    void validate(const std::string& subcommand) const;  // throws ConfigError

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    SpaceSpec space() const;  // from space/sign/n/c keys
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rank1
