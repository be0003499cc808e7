/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace hetx {

// Error categories map 1:1 onto CLI exit codes and C-API status codes.
enum class errc : int {
  config = 2,   // invalid parameters / configuration
  data = 3,     // unreadable or malformed input data
  internal = 4, // should not happen
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw error(errc::config, msg); }
[[noreturn]] inline void throw_data(const std::string& msg) { throw error(errc::data, msg); }

} // namespace hetx
