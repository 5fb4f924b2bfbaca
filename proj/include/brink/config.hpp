#ifndef BRINK_CONFIG_HPP
#define BRINK_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace brink {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat key-value run configuration with dotted section names, e.g.
///   model.tail.kind = coulomb
/// '#' starts a comment; blank lines are ignored; duplicate keys are an
/// error.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;  // comma separated

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace brink

#endif
