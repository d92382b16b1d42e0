#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wq::harness {

struct Artifact {
    std::string name;
    std::string content;
};

/// Output files collected in memory while a command runs.
class ArtifactSet {
  public:
    void add(std::string name, std::string content);
    /// Two-space indented JSON with a trailing newline.
    void add_json(std::string name, const nlohmann::json& value);
    const std::vector<Artifact>& items() const { return items_; }

  private:
    std::vector<Artifact> items_;
};

/// Writes every artifact under dir. Files are staged under temporary names and renamed
/// only once all of them were written, so a failure leaves no partial outputs behind.
void commit(const ArtifactSet& artifacts, const std::filesystem::path& dir);

} // namespace wq::harness
