#ifndef CURATOR_TYPES_H_
#define CURATOR_TYPES_H_

#include <optional>
#include <string_view>

namespace curator {

enum class Task {
  kLbap,
  kSbap,
};

std::string_view task_name(Task task);
std::optional<Task> parse_task(std::string_view text);

}  // namespace curator

#endif  // CURATOR_TYPES_H_
