#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <atomic>
#include <fstream>
#include <sstream>

#include "lish/layout.hpp"
#include "lish/server.hpp"

namespace lish::server {

namespace {

constexpr std::string_view kSuffix = ".lish.json";

void write_all(int fd, const std::string& text, const std::filesystem::path& where) {
    const char* p = text.data();
    std::size_t left = text.size();
    while (left > 0) {
        auto n = ::write(fd, p, left);
        if (n < 0) throw Error("write failed: " + where.string());
        p += n;
        left -= static_cast<std::size_t>(n);
    }
}

} // namespace

void EventLog::publish(const std::string& id, std::int64_t version) {
    {
        std::lock_guard lock(mutex_);
        events_.push_back({next_seq_++, id, version});
        while (events_.size() > 1024) events_.pop_front();
    }
    cv_.notify_all();
}

std::uint64_t EventLog::latest() const {
    std::lock_guard lock(mutex_);
    return next_seq_ - 1;
}

std::vector<ChangeEvent> EventLog::wait(std::uint64_t after, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    cv_.wait_for(lock, timeout, [&] { return closed_ || next_seq_ - 1 > after; });
    std::vector<ChangeEvent> out;
    for (const auto& e : events_)
        if (e.seq > after) out.push_back(e);
    return out;
}

void EventLog::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool EventLog::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

bool valid_id(const std::string& id) {
    if (id.empty() || id.size() > 200 || id.front() == '.') return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
}

Workspace::Workspace(std::filesystem::path root_dir, std::size_t history_limit)
    : root_(std::move(root_dir)), history_limit_(std::max<std::size_t>(history_limit, 1)) {
    if (!std::filesystem::is_directory(root_)) throw Error("workspace is not a directory: " + root_.string());
}

std::filesystem::path Workspace::file_for(const std::string& id) const {
    return root_ / (id + std::string(kSuffix));
}

std::vector<std::string> Workspace::list() const {
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(root_)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        if (name.size() <= kSuffix.size() || !name.ends_with(kSuffix)) continue;
        auto id = name.substr(0, name.size() - kSuffix.size());
        if (valid_id(id)) ids.push_back(std::move(id));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

Workspace::Entry& Workspace::open(const std::string& id) {
    if (!valid_id(id)) throw NotFound("no document '" + id + "'");
    std::lock_guard lock(map_mutex_);
    if (auto it = open_.find(id); it != open_.end()) return *it->second;
    const auto file = file_for(id);
    std::ifstream in(file, std::ios::binary);
    if (!in) throw NotFound("no document '" + id + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    auto entry = std::make_unique<Entry>();
    entry->doc = parse_json(ss.str()).doc;
    entry->doc.id = id;
    entry->history.push_back(serialize_json(entry->doc));
    return *open_.emplace(id, std::move(entry)).first->second;
}

void Workspace::persist(const std::string& id, const std::string& text) const {
    static std::atomic<unsigned> counter{0};
    const auto target = file_for(id);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw Error("cannot write " + tmp.string());
    try {
        write_all(fd, text + "\n", tmp);
        if (::fsync(fd) != 0) throw Error("fsync failed: " + tmp.string());
    } catch (...) {
        ::close(fd);
        std::filesystem::remove(tmp);
        throw;
    }
    ::close(fd);
    std::filesystem::rename(tmp, target);
}

Snapshot Workspace::snapshot(const std::string& id) {
    Entry& e = open(id);
    Document doc;
    {
        std::shared_lock lock(e.mutex);
        doc = e.doc;
    }
    Snapshot s{id, doc.version, document_to_json(doc), nullptr};
    if (validate(doc.root).ok()) s.layout = placements_to_json(compute_layout(doc));
    return s;
}

Document Workspace::document(const std::string& id) {
    Entry& e = open(id);
    std::shared_lock lock(e.mutex);
    return e.doc;
}

std::vector<std::string> Workspace::history(const std::string& id) {
    Entry& e = open(id);
    std::shared_lock lock(e.mutex);
    return {e.history.begin(), e.history.end()};
}

CommandOutcome Workspace::apply_commands(const std::string& id, const std::vector<EditCommand>& commands,
                                         std::int64_t expected_version) {
    Entry& e = open(id);
    std::unique_lock lock(e.mutex);
    if (expected_version != e.doc.version) return VersionConflict{e.doc.version};
    EditResult result;
    try {
        result = apply_all(e.doc, commands);
    } catch (const ValidationError& err) {
        return Rejected{422, err.what(), err.report};
    } catch (const PolicyError& err) {
        return Rejected{422, err.what(), std::nullopt};
    } catch (const Error& err) {
        return Rejected{400, err.what(), std::nullopt};
    }
    result.doc.id = id;
    auto text = serialize_json(result.doc);
    persist(id, text);
    e.doc = result.doc;
    e.history.push_back(std::move(text));
    while (e.history.size() > history_limit_) e.history.pop_front();
    const auto version = e.doc.version;
    lock.unlock();
    events_.publish(id, version);
    return Applied{std::move(result)};
}

} // namespace lish::server
