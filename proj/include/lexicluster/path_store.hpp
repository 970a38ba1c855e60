#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>

namespace lexicluster {

/// Label used as a relative path inside a PathStore: nonempty, characters
/// [A-Za-z0-9_/], no leading, trailing or doubled '/'.
class PathLabel {
public:
    explicit PathLabel(std::string label);

    const std::string& str() const { return label_; }

    friend bool operator==(const PathLabel&, const PathLabel&) = default;
    friend auto operator<=>(const PathLabel&, const PathLabel&) = default;

private:
    std::string label_;
};

/// Appends "1", the only way labels are derived from one another.
PathLabel derive_child(const PathLabel& label);
/// label + "/" + leaf, for files that sit under a job's output label.
PathLabel sub_label(const PathLabel& label, std::string_view leaf);

/// Label-addressed byte store rooted at a directory. Each write lands
/// atomically (temp file + rename); readers see the last complete write.
class PathStore {
public:
    explicit PathStore(std::filesystem::path root);

    void write(const PathLabel& label, std::string_view bytes);
    /// Throws Errc::absent_label if nothing was written under `label`.
    std::string read(const PathLabel& label) const;
    bool contains(const PathLabel& label) const;
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    mutable std::mutex mutex_;
};

}  // namespace lexicluster
