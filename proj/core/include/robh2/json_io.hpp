#pragma once

#include <string>

#include "robh2/plant.hpp"

namespace robh2 {

// Controller file content: either a static state-feedback gain or a full LFT
// output-feedback controller.
struct ControllerFile {
    enum class Type { state_feedback, lft_output_feedback };
    Type type = Type::state_feedback;
    Matrix F;            // state_feedback
    LftController lft;   // lft_output_feedback
};

// UTF-8 JSON with matrices as row-major nested arrays of finite doubles.
// Missing optional blocks default to zero matrices of the implied size.
std::string plant_to_json(const LftPlant& plant);
LftPlant plant_from_json(const std::string& text);

std::string controller_to_json(const ControllerFile& controller);
ControllerFile controller_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit digest used to fingerprint input files in reports.
std::string content_digest(const std::string& bytes);

}  // namespace robh2
