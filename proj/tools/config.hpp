#pragma once

// TOML config files with command-line overrides. A value given as a flag
// always wins; otherwise the config key is used; otherwise the default.
// Every key of the file has to be consumed by the command, so a typo fails
// instead of being ignored.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <toml.hpp>

#include "fracdev/error.hpp"

namespace fracdev::cli {

class Overlay {
 public:
  void load(const std::string& file) {
    try {
      table_ = toml::parse_file(file);
    } catch (const toml::parse_error& e) {
      throw Error(errc::io, "cannot parse config '" + file + "': " + std::string(e.description()));
    }
    loaded_ = true;
  }

  bool loaded() const noexcept { return loaded_; }

  template <typename T>
  void apply(const CLI::Option* flag, std::string_view key, T& var) {
    const auto node = lookup(key);
    if (!node || (flag && flag->count() > 0)) return;
    if constexpr (std::is_same_v<T, bool>) {
      require(node.is_boolean(), errc::invalid_argument, "config key '" + std::string(key) + "' must be a boolean");
      var = *node.template value<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      require(node.is_string(), errc::invalid_argument, "config key '" + std::string(key) + "' must be a string");
      var = *node.template value<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      const auto v = node.template value<double>();
      require(v.has_value(), errc::invalid_argument, "config key '" + std::string(key) + "' must be a number");
      var = static_cast<T>(*v);
    } else {
      const auto v = node.template value<std::int64_t>();
      require(v.has_value() && *v >= 0, errc::invalid_argument,
              "config key '" + std::string(key) + "' must be a non-negative integer");
      var = static_cast<T>(*v);
    }
  }

  void apply(const CLI::Option* flag, std::string_view key, std::vector<double>& var) {
    const auto node = lookup(key);
    if (!node || (flag && flag->count() > 0)) return;
    const auto* arr = node.as_array();
    require(arr != nullptr, errc::invalid_argument, "config key '" + std::string(key) + "' must be an array");
    var.clear();
    for (const auto& item : *arr) {
      const auto v = item.value<double>();
      require(v.has_value(), errc::invalid_argument, "config key '" + std::string(key) + "' must hold numbers");
      var.push_back(*v);
    }
  }

  /// Throws when the file holds keys no command option consumed.
  void check_consumed() const {
    if (!loaded_) return;
    std::vector<std::string> unknown;
    for (const auto& [section, node] : table_) {
      const auto* sub = node.as_table();
      if (!sub) {
        if (!used_.count(std::string(section.str()))) unknown.emplace_back(section.str());
        continue;
      }
      for (const auto& [key, value] : *sub) {
        const std::string full = std::string(section.str()) + "." + std::string(key.str());
        if (!used_.count(full)) unknown.push_back(full);
      }
    }
    if (!unknown.empty()) {
      std::string list;
      for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
      throw Error(errc::invalid_argument, "unknown config keys: " + list);
    }
  }

 private:
  toml::node_view<const toml::node> lookup(std::string_view key) {
    if (!loaded_) return {};
    auto node = toml::at_path(static_cast<const toml::node&>(table_), key);
    if (node) used_.insert(std::string(key));
    return node;
  }

  toml::table table_;
  bool loaded_ = false;
  std::set<std::string> used_;
};

}  // namespace fracdev::cli
