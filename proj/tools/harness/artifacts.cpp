#include "harness/artifacts.hpp"

#include <fstream>
#include <stdexcept>

#include "wavequanta/error.hpp"

namespace wq::harness {

void ArtifactSet::add(std::string name, std::string content) {
    for (const auto& a : items_)
        if (a.name == name) throw std::logic_error("artifact '" + name + "' added twice");
    items_.push_back({std::move(name), std::move(content)});
}

void ArtifactSet::add_json(std::string name, const nlohmann::json& value) { add(std::move(name), value.dump(2) + "\n"); }

void commit(const ArtifactSet& artifacts, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<fs::path> staged;
    auto discard = [&] {
        std::error_code ec;
        for (const auto& p : staged) fs::remove(p, ec);
    };
    try {
        for (const auto& a : artifacts.items()) {
            const fs::path tmp = dir / ("." + a.name + ".partial");
            staged.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out.write(a.content.data(), static_cast<std::streamsize>(a.content.size()));
            out.close();
            if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        for (std::size_t i = 0; i < staged.size(); ++i) fs::rename(staged[i], dir / artifacts.items()[i].name);
    } catch (...) {
        discard();
        throw;
    }
}

} // namespace wq::harness
