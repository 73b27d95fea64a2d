#pragma once

#include <string>

namespace line_explorer::grading {

// 128 random bits as 32 lowercase hex digits.
std::string random_id();

}  // namespace line_explorer::grading
