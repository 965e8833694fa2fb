#pragma once
// Flat, schema-checked run configuration. Values load from a key=value file,
// command-line overrides win over the file, and the fully resolved map is
// echoed into the output directory so a run can be reproduced exactly.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "twinforge/errors.hpp"

namespace twinforge {

enum class ConfigType { integer, real, boolean, text };

struct ConfigKeySpec {
    ConfigType type;
    std::string default_value;
    bool sweepable = false;  // repeated occurrences accumulate instead of replacing
};

class RunConfig {
public:
    RunConfig();  // all defaults

    static const std::map<std::string, ConfigKeySpec>& schema();

    static RunConfig from_file(const std::string& path);  // MissingFile et al.

    /// Applies one key=value pair; last write wins except for sweepable keys,
    /// where values from the same source accumulate.
    void set(const std::string& key, const std::string& value);

    /// Replaces any file/default values for keys present in the override set.
    void apply_overrides(const std::vector<std::pair<std::string, std::string>>& kvs);

    std::int64_t get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    const std::string& get_string(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<std::size_t> get_size_list(const std::string& key) const;

    void write_resolved(std::ostream& os) const;

private:
    const ConfigKeySpec& spec_for(const std::string& key) const;
    void check_type(const std::string& key, const std::string& value) const;

    std::map<std::string, std::vector<std::string>> values_;
};

}  // namespace twinforge
