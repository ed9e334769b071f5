#include "vpn/session.hpp"

#include "vpn/dsl.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdio>
#include <iostream>

namespace vpn {

SessionStore::SessionStore(Clock::duration ttl) : ttl_(ttl), rng_(std::random_device{}()) {}

std::string SessionStore::fresh_id()
{
    for (;;) {
        char buf[33];
        std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                      static_cast<unsigned long long>(rng_()));
        if (!sessions_.count(buf))
            return buf;
    }
}

std::shared_ptr<Session> SessionStore::create(Net net)
{
    auto s = std::make_shared<Session>();
    s->initial = net.initial_configuration();
    s->net = std::move(net);
    s->created_at = std::chrono::system_clock::now();

    std::lock_guard lock(mutex_);
    const auto now = Clock::now();
    s->id = fresh_id();
    sessions_.emplace(s->id, Entry{s, now});
    return s;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id)
{
    std::lock_guard lock(mutex_);
    const auto now = Clock::now();
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        return nullptr;
    if (now - it->second.last_used > ttl_) {
        sessions_.erase(it);
        return nullptr;
    }
    it->second.last_used = now;
    return it->second.session;
}

bool SessionStore::erase(const std::string& id)
{
    std::lock_guard lock(mutex_);
    return sessions_.erase(id) != 0;
}

std::size_t SessionStore::size()
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

void SessionStore::expire(Clock::time_point now)
{
    std::lock_guard lock(mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (now - it->second.last_used > ttl_)
            it = sessions_.erase(it);
        else
            ++it;
    }
}

namespace {

using Response = SessionService::Response;

Response error(int status, const std::string& message)
{
    return {status, {{"error", message}}};
}

Response not_found(const std::string& id)
{
    return error(404, "unknown session '" + id + "'");
}

Json state_json(const Session& s)
{
    const Configuration& c = s.current();
    return {{"config", config_json(c)}, {"enabled", steps_json(enabled_set(s.net, c))}};
}

} // namespace

Response SessionService::create(const Json& request)
{
    if (!request.is_object() || !request.contains("source") || !request["source"].is_string())
        return error(400, "request body must be {\"source\": \"...\"}");
    try {
        auto doc = parse(request["source"].get<std::string>());
        auto s = store_.create(std::move(doc.net));
        std::shared_lock lock(s->mutex);
        Json body = state_json(*s);
        body["id"] = s->id;
        return {201, body};
    } catch (const ParseError& e) {
        Json diags = Json::array();
        for (const auto& d : e.diagnostics())
            diags.push_back({{"line", d.span.line},
                             {"column", d.span.column},
                             {"length", d.span.length},
                             {"message", d.message}});
        return {400, {{"error", "invalid net source"}, {"diagnostics", diags}}};
    }
}

Response SessionService::get(const std::string& id)
{
    auto s = store_.find(id);
    if (!s)
        return not_found(id);
    std::shared_lock lock(s->mutex);
    Json body = state_json(*s);
    body["historyLength"] = s->history.size();
    return {200, body};
}

Response SessionService::net(const std::string& id)
{
    auto s = store_.find(id);
    if (!s)
        return not_found(id);
    std::shared_lock lock(s->mutex);
    return {200, net_json(s->net)};
}

Response SessionService::fire(const std::string& id, const Json& request)
{
    auto s = store_.find(id);
    if (!s)
        return not_found(id);
    if (!request.is_object() || !request.contains("transition") || !request["transition"].is_string())
        return error(400, "request body must be {\"transition\": \"...\", \"binding\": {...}}");

    Step step;
    try {
        step.transition = request["transition"].get<std::string>();
        step.binding = binding_from_json(request.value("binding", Json::object()));
    } catch (const std::invalid_argument& e) {
        return error(400, e.what());
    }

    std::unique_lock lock(s->mutex);
    const Configuration& current = s->current();
    auto enabled = enabled_set(s->net, current);
    if (std::find(enabled.begin(), enabled.end(), step) == enabled.end()) {
        Json body = state_json(*s);
        body["error"] = "step is not enabled";
        return {409, body};
    }
    auto result = vpn::fire(s->net, current, step.transition, step.binding);
    Json event = event_json(result.event);
    s->history.emplace_back(std::move(result.config), std::move(result.event));
    Json body = state_json(*s);
    body["event"] = std::move(event);
    return {200, body};
}

Response SessionService::undo(const std::string& id)
{
    auto s = store_.find(id);
    if (!s)
        return not_found(id);
    std::unique_lock lock(s->mutex);
    const bool at_root = s->history.empty();
    if (!at_root)
        s->history.pop_back();
    Json body = state_json(*s);
    body["atRoot"] = at_root;
    return {200, body};
}

Response SessionService::remove(const std::string& id)
{
    if (!store_.erase(id))
        return not_found(id);
    return {204, nullptr};
}

namespace {

void reply(httplib::Response& res, const Response& r)
{
    res.status = r.status;
    if (!r.body.is_null())
        res.set_content(r.body.dump(), "application/json");
}

std::optional<Json> read_body(const httplib::Request& req, httplib::Response& res)
{
    Json body = Json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
        reply(res, error(400, "request body is not valid JSON"));
        return std::nullopt;
    }
    return body;
}

} // namespace

void register_routes(httplib::Server& server, SessionService& service, const ServeOptions& options)
{
    const std::string id = "/api/sessions/([0-9a-f]{32})";

    server.Post("/api/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
        if (auto body = read_body(req, res))
            reply(res, service.create(*body));
    });
    server.Get(id, [&service](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.get(req.matches[1]));
    });
    server.Get(id + "/net", [&service](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.net(req.matches[1]));
    });
    server.Post(id + "/fire", [&service](const httplib::Request& req, httplib::Response& res) {
        if (auto body = read_body(req, res))
            reply(res, service.fire(req.matches[1], *body));
    });
    server.Post(id + "/undo", [&service](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.undo(req.matches[1]));
    });
    server.Delete(id, [&service](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.remove(req.matches[1]));
    });

    if (!options.cors_origin.empty()) {
        const std::string origin = options.cors_origin;
        server.Options("/api/.*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
        server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        });
    }
    if (options.static_dir)
        server.set_mount_point("/", *options.static_dir);
}

bool serve(const ServeOptions& options)
{
    SessionStore store;
    SessionService service(store);
    httplib::Server server;
    register_routes(server, service, options);
    if (!server.bind_to_port(options.bind, options.port)) {
        std::cerr << "vpn: cannot listen on " << options.bind << ":" << options.port << "\n";
        return false;
    }
    std::cerr << "vpn: serving on http://" << options.bind << ":" << options.port << "\n";
    return server.listen_after_bind();
}

} // namespace vpn
