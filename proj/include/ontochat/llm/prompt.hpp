#pragma once
#include <stdexcept>
#include <string>
#include <string_view>

namespace ontochat::llm {

// Recorded in reports; bump whenever the instruction wording changes.
inline constexpr std::string_view kPromptTemplateVersion = "tbox-sparql/1";

class EmptyQuestion : public std::invalid_argument {
public:
    EmptyQuestion() : std::invalid_argument("question is empty") {}
};

struct PromptBundle {
    std::string system_instructions;
    std::string tbox_text;
    std::string question;
    // Set on repair attempts: the previous query and why it was rejected.
    std::string repair_note;

    // The user-turn message: schema, question and optional repair note.
    std::string render_user() const;
    // System instructions followed by the user turn; the exact bytes a
    // provider sees.
    std::string render() const;
    // SHA-256 of render(), lowercase hex.
    std::string hash() const;
};

// Deterministic: identical arguments give byte-identical bundles. The
// question is kept verbatim. Throws EmptyQuestion for blank questions.
PromptBundle assemble_prompt(const std::string& tbox_text, const std::string& question,
                             const std::string& repair_note = {});

} // namespace ontochat::llm
