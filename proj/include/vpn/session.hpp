#pragma once

#include "vpn/export.hpp"

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace httplib {
class Server;
}

namespace vpn {

// One token game. Mutations hold `mutex` exclusively, reads share it.
struct Session
{
    std::string id;
    Net net;
    Configuration initial;
    std::vector<std::pair<Configuration, FiringEvent>> history;  // state after each firing
    std::chrono::system_clock::time_point created_at;

    std::shared_mutex mutex;

    [[nodiscard]] const Configuration& current() const
    {
        return history.empty() ? initial : history.back().first;
    }
};

// In-memory sessions keyed by 128-bit random ids (32 hex digits).
// Sessions idle for longer than `ttl` are dropped on the next access.
class SessionStore
{
public:
    using Clock = std::chrono::steady_clock;

    explicit SessionStore(Clock::duration ttl = std::chrono::hours(1));

    std::shared_ptr<Session> create(Net net);
    [[nodiscard]] std::shared_ptr<Session> find(const std::string& id);
    bool erase(const std::string& id);
    [[nodiscard]] std::size_t size();

    // Drops sessions idle since before `now - ttl`.
    void expire(Clock::time_point now);

private:
    struct Entry
    {
        std::shared_ptr<Session> session;
        Clock::time_point last_used;
    };

    std::string fresh_id();

    Clock::duration ttl_;
    std::mutex mutex_;
    std::mt19937_64 rng_;
    std::unordered_map<std::string, Entry> sessions_;
};

// Transport-free handlers: every call returns an HTTP status and a body.
class SessionService
{
public:
    struct Response
    {
        int status = 200;
        Json body;  // null for 204
    };

    explicit SessionService(SessionStore& store) : store_(store) {}

    Response create(const Json& request);
    Response get(const std::string& id);
    Response net(const std::string& id);
    Response fire(const std::string& id, const Json& request);
    Response undo(const std::string& id);
    Response remove(const std::string& id);

private:
    SessionStore& store_;
};

struct ServeOptions
{
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::string cors_origin = "*";  // empty disables CORS headers
    std::optional<std::string> static_dir;
};

void register_routes(httplib::Server& server, SessionService& service, const ServeOptions& options);

// Blocks until the server stops. Returns false if binding failed.
bool serve(const ServeOptions& options);

} // namespace vpn
