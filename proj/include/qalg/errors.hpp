#pragma once

#include <stdexcept>
#include <string>

namespace qalg {

/* Bad user-supplied data (workspace files, CLI arguments, presentations the
   library refuses). Carries a slash-separated path into the offending input
   when one is known; maps to CLI exit code 2. */
class input_error : public std::runtime_error {
public:
  explicit input_error(std::string msg, std::string path = "")
      : std::runtime_error(path.empty() ? msg : msg + " (at " + path + ")"),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

/* Broken internal invariant; always a bug, never a data problem. */
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void check_internal(bool ok, const char* what) {
  if (!ok) throw internal_error(what);
}

}  // namespace qalg
