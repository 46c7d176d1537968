#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "lish/codec.hpp"
#include "lish/edit.hpp"
#include "lish/error.hpp"
#include "lish/validate.hpp"

namespace httplib {
class Server;
}

namespace lish::server {

struct NotFound : Error {
    using Error::Error;
};

struct ChangeEvent {
    std::uint64_t seq = 0;
    std::string id;
    std::int64_t version = 0;
};

/// Append-only feed of document changes for server-sent events.
class EventLog {
public:
    void publish(const std::string& id, std::int64_t version);
    std::uint64_t latest() const;
    /// Events with seq > after; waits up to `timeout` when there are none.
    std::vector<ChangeEvent> wait(std::uint64_t after, std::chrono::milliseconds timeout) const;
    void close();
    bool closed() const;

private:
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    std::deque<ChangeEvent> events_;
    std::uint64_t next_seq_ = 1;
    bool closed_ = false;
};

struct Snapshot {
    std::string id;
    std::int64_t version = 0;
    Json doc;
    /// Placement array, or null when the stored document does not validate.
    Json layout;
};

struct Applied {
    EditResult result;
};
struct VersionConflict {
    std::int64_t current_version = 0;
};
/// The batch was refused; the document is unchanged.
struct Rejected {
    /// 422 for validation and policy failures, 400 for malformed commands.
    int status = 422;
    std::string message;
    std::optional<ValidationReport> report;
};
using CommandOutcome = std::variant<Applied, VersionConflict, Rejected>;

/// A directory of `<id>.lish.json` files with the open documents cached in
/// memory. Writes to one document are serialised; reads never block on
/// other documents. The file on disk is replaced atomically after every
/// accepted batch, so it always holds the latest version.
class Workspace {
public:
    static constexpr std::size_t default_history = 50;

    explicit Workspace(std::filesystem::path root_dir, std::size_t history_limit = default_history);

    std::vector<std::string> list() const;
    Snapshot snapshot(const std::string& id);
    Document document(const std::string& id);
    /// Serialized versions, oldest first, at most history_limit entries.
    std::vector<std::string> history(const std::string& id);

    /// Optimistic concurrency: applies the whole batch iff expected_version
    /// equals the current version.
    CommandOutcome apply_commands(const std::string& id, const std::vector<EditCommand>& commands,
                                  std::int64_t expected_version);

    EventLog& events() { return events_; }
    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path file_for(const std::string& id) const;

private:
    struct Entry {
        std::shared_mutex mutex;
        Document doc;
        std::deque<std::string> history;
    };

    Entry& open(const std::string& id);
    void persist(const std::string& id, const std::string& text) const;

    std::filesystem::path root_;
    std::size_t history_limit_;
    mutable std::mutex map_mutex_;
    std::map<std::string, std::unique_ptr<Entry>> open_;
    EventLog events_;
};

bool valid_id(const std::string& id);

/// Registers the HTTP/JSON routes and the /events stream on `http`.
void install_routes(httplib::Server& http, Workspace& workspace);

} // namespace lish::server
