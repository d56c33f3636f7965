#ifndef CURATOR_TESTS_TEST_SUPPORT_H_
#define CURATOR_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace curator::testing {

inline std::filesystem::path test_dir() { return CURATOR_TEST_DIR; }
inline std::filesystem::path data_path(const std::string &name) {
  return test_dir() / "data" / name;
}
inline std::filesystem::path golden_path(const std::string &name) {
  return test_dir() / "golden" / name;
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path &path,
                       const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

// Non-empty, non-comment lines; the first whitespace-separated token.
inline std::vector<std::string> read_corpus(const std::filesystem::path &path) {
  std::vector<std::string> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    out.push_back(line.substr(0, line.find_first_of(" \t")));
  }
  return out;
}

// Fresh directory removed on destruction.
class TempDir {
public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path()
            / ("curator_test_" + std::to_string(rd()) + "_"
               + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const {
    return path_ / name;
  }

private:
  std::filesystem::path path_;
};

// Equality of two directory trees, file by file.
inline bool same_tree(const std::filesystem::path &a,
                      const std::filesystem::path &b, std::string *why) {
  namespace fs = std::filesystem;
  std::vector<fs::path> left, right;
  for (const auto &e: fs::recursive_directory_iterator(a)) {
    left.push_back(fs::relative(e.path(), a));
  }
  for (const auto &e: fs::recursive_directory_iterator(b)) {
    right.push_back(fs::relative(e.path(), b));
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  if (left != right) {
    *why = "file lists differ";
    return false;
  }
  for (const fs::path &rel: left) {
    if (fs::is_regular_file(a / rel)
        && read_file(a / rel) != read_file(b / rel)) {
      *why = rel.string() + " differs";
      return false;
    }
  }
  return true;
}

}  // namespace curator::testing

#endif  // CURATOR_TESTS_TEST_SUPPORT_H_
