#include "lexicluster/path_store.hpp"

#include "lexicluster/corpus.hpp"
#include "lexicluster/error.hpp"

namespace lexicluster {

namespace fs = std::filesystem;

namespace {

bool valid_label(std::string_view s) {
    if (s.empty() || s.front() == '/' || s.back() == '/') return false;
    char prev = 0;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '/';
        if (!ok || (c == '/' && prev == '/')) return false;
        prev = c;
    }
    return true;
}

}  // namespace

PathLabel::PathLabel(std::string label) : label_(std::move(label)) {
    if (!valid_label(label_)) throw Error(Errc::invalid_label, "invalid path label '" + label_ + "'");
}

PathLabel derive_child(const PathLabel& label) { return PathLabel(label.str() + "1"); }

PathLabel sub_label(const PathLabel& label, std::string_view leaf) {
    return PathLabel(label.str() + "/" + std::string(leaf));
}

PathStore::PathStore(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

void PathStore::write(const PathLabel& label, std::string_view bytes) {
    std::lock_guard lock(mutex_);
    write_file(root_ / label.str(), bytes);
}

std::string PathStore::read(const PathLabel& label) const {
    std::lock_guard lock(mutex_);
    auto path = root_ / label.str();
    if (!fs::is_regular_file(path)) throw Error(Errc::absent_label, "no data stored under label '" + label.str() + "'");
    return read_file(path);
}

bool PathStore::contains(const PathLabel& label) const {
    std::lock_guard lock(mutex_);
    return fs::is_regular_file(root_ / label.str());
}

}  // namespace lexicluster
