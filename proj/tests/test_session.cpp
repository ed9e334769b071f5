#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vpn/session.hpp"

#include <httplib.h>

#include <thread>

using namespace vpn;
using vpn::testing::fixture_path;
using vpn::testing::read_file;

namespace {

Json source(const std::string& name)
{
    return {{"source", read_file(fixture_path(name))}};
}

Json fire_body(const std::string& t, const Binding& b)
{
    return {{"transition", t}, {"binding", binding_json(b)}};
}

const Json kNe2Enabled = Json::parse(R"([
    {"binding":{"D":"f1"},"transition":"t1"},
    {"binding":{"D":"f2"},"transition":"t1"},
    {"binding":{"I":"I_AB"},"transition":"t2"}])");

} // namespace

TEST_CASE("replaying a session's history reproduces its current configuration")
{
    SessionStore store;
    SessionService service(store);
    std::mt19937_64 rng(5);
    for (const char* name : {"ne2", "ne3", "ne4"}) {
        const std::string id = service.create(source(name)).body["id"];
        const Net net = testing::fixture(name);
        std::vector<Step> fired;
        for (int i = 0; i < 40; ++i) {
            const Json state = service.get(id).body;
            if (state["enabled"].empty() || rng() % 5 == 0) {
                service.undo(id);
                if (!fired.empty())
                    fired.pop_back();
                continue;
            }
            const Json& pick = state["enabled"][rng() % state["enabled"].size()];
            const auto r = service.fire(id, pick);
            REQUIRE(r.status == 200);
            fired.push_back({pick["transition"], binding_from_json(pick["binding"])});
            CHECK(r.body["config"] == config_json(fire_sequence(net, fired).back()));
        }
        CHECK(service.get(id).body["config"] == config_json(fire_sequence(net, fired).back()));
        CHECK(service.get(id).body["historyLength"] == fired.size());
    }
}

TEST_CASE("create_session examples")
{
    SessionStore store;
    SessionService service(store);

    const auto r = service.create(source("ne2"));
    CHECK(r.status == 201);
    CHECK(r.body["enabled"] == kNe2Enabled);
    CHECK(r.body["config"] == config_json(testing::fixture("ne2").initial_configuration()));
    const std::string id = r.body["id"];
    CHECK(id.size() == 32);
    CHECK(id.find_first_not_of("0123456789abcdef") == std::string::npos);

    const auto bad = service.create({{"source", "net X\narc Q -> t : a\n"}});
    CHECK(bad.status == 400);
    REQUIRE(bad.body["diagnostics"].size() >= 1);
    CHECK(bad.body["diagnostics"][0]["line"] == 2);
    CHECK(bad.body["diagnostics"][0].contains("column"));

    const auto dead = service.create({{"source", "net D\nconst p\nplace p\n"}});
    CHECK(dead.status == 201);
    CHECK(dead.body["enabled"] == Json::array());

    CHECK(service.create(Json::array()).status == 400);
    CHECK(service.create({{"source", 3}}).status == 400);
}

TEST_CASE("fire_in_session examples")
{
    SessionStore store;
    SessionService service(store);
    const std::string id = service.create(source("ne2")).body["id"];

    const auto r = service.fire(id, fire_body("t2", {{"I", "I_AB"}}));
    CHECK(r.status == 200);
    CHECK(r.body["config"]["gamma"] == Json::parse(R"({"I":["I_AB"]})"));
    CHECK(r.body["config"]["marking"]["De"] == Json::parse(R"([["I_AB"]])"));
    CHECK(r.body["event"]["solidArcs"] == Json::parse(R"([{"source":"t2","target":"I_AB"}])"));
    CHECK(r.body["event"]["gammaOps"][0]["op"] == "+");

    const std::string other = service.create(source("ne2")).body["id"];
    const auto stale = service.fire(other, fire_body("t3", {{"I", "I_AB"}, {"D", "f1"}}));
    CHECK(stale.status == 409);
    CHECK(stale.body["enabled"] == kNe2Enabled);
    CHECK(service.get(other).body["historyLength"] == 0);

    CHECK(service.fire("0123456789abcdef0123456789abcdef", fire_body("t2", {})).status == 404);
    CHECK(service.fire(id, Json{{"binding", Json::object()}}).status == 400);
    CHECK(service.fire(id, Json{{"transition", "t1"}, {"binding", Json{{"D", 1}}}}).status == 400);
    CHECK(service.fire(id, fire_body("t42", {})).status == 409);
}

TEST_CASE("undo examples")
{
    SessionStore store;
    SessionService service(store);
    const std::string id = service.create(source("ne2")).body["id"];
    const Json pi0 = service.get(id).body["config"];

    service.fire(id, fire_body("t2", {{"I", "I_AB"}}));
    auto u = service.undo(id);
    CHECK(u.body["config"] == pi0);
    CHECK(u.body["atRoot"] == false);

    u = service.undo(id);
    CHECK(u.status == 200);
    CHECK(u.body["config"] == pi0);
    CHECK(u.body["atRoot"] == true);

    service.fire(id, fire_body("t2", {{"I", "I_AB"}}));
    service.fire(id, fire_body("t1", {{"D", "f1"}}));
    service.undo(id);
    CHECK(service.undo(id).body["config"] == pi0);

    CHECK(service.undo("ffffffffffffffffffffffffffffffff").status == 404);
}

TEST_CASE("sessions are isolated and reads do not mutate")
{
    SessionStore store;
    SessionService service(store);
    const std::string a = service.create(source("ne2")).body["id"];
    const std::string b = service.create(source("ne2")).body["id"];
    CHECK(a != b);
    service.fire(a, fire_body("t2", {{"I", "I_AB"}}));
    CHECK(service.get(b).body["historyLength"] == 0);
    CHECK(service.get(a).body["historyLength"] == 1);

    const Json before = service.get(a).body;
    (void)service.net(a);
    (void)service.get(a);
    CHECK(service.get(a).body == before);

    const Json net = service.net(a).body;
    CHECK(net["name"] == "Ne2");
    std::size_t virtuals = 0;
    for (const auto& n : net["nodes"])
        virtuals += n["kind"] == "virtual";
    CHECK(virtuals == 2);

    CHECK(service.remove(a).status == 204);
    CHECK(service.get(a).status == 404);
    CHECK(service.remove(a).status == 404);
    CHECK(service.get(b).status == 200);
}

TEST_CASE("idle sessions expire")
{
    SessionStore store(std::chrono::milliseconds(0));
    const auto s = store.create(testing::fixture("ne1"));
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    CHECK(store.find(s->id) == nullptr);

    SessionStore longer(std::chrono::hours(1));
    const auto t = longer.create(testing::fixture("ne1"));
    longer.expire(SessionStore::Clock::now());
    CHECK(longer.size() == 1);
    longer.expire(SessionStore::Clock::now() + std::chrono::hours(2));
    CHECK(longer.size() == 0);
    CHECK(longer.find(t->id) == nullptr);
}

TEST_CASE("concurrent firing in one session stays consistent")
{
    SessionStore store;
    SessionService service(store);
    const std::string id = service.create(source("ne4")).body["id"];
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            std::mt19937_64 rng(w);
            for (int i = 0; i < 50; ++i) {
                const Json state = service.get(id).body;
                if (state["enabled"].empty())
                    continue;
                (void)service.fire(id, state["enabled"][rng() % state["enabled"].size()]);
            }
        });
    for (auto& t : workers)
        t.join();

    auto s = store.find(id);
    REQUIRE(s);
    Configuration c = s->initial;
    for (const auto& [after, event] : s->history) {
        c = fire(s->net, c, event.transition, event.binding).config;
        CHECK(c == after);
    }
}

TEST_CASE("HTTP routes")
{
    SessionStore store;
    SessionService service(store);
    httplib::Server server;
    ServeOptions options;
    options.cors_origin = "http://ui.example";
    register_routes(server, service, options);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto created = client.Post("/api/sessions", source("ne2").dump(), "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    CHECK(created->get_header_value("Access-Control-Allow-Origin") == "http://ui.example");
    const std::string id = Json::parse(created->body)["id"];

    auto fired = client.Post("/api/sessions/" + id + "/fire", fire_body("t2", {{"I", "I_AB"}}).dump(),
                             "application/json");
    REQUIRE(fired);
    CHECK(fired->status == 200);
    CHECK(Json::parse(fired->body)["config"]["gamma"] == Json::parse(R"({"I":["I_AB"]})"));

    auto conflict = client.Post("/api/sessions/" + id + "/fire", fire_body("t2", {{"I", "I_AB"}}).dump(),
                                "application/json");
    REQUIRE(conflict);
    CHECK(conflict->status == 409);

    auto got = client.Get("/api/sessions/" + id);
    REQUIRE(got);
    CHECK(Json::parse(got->body)["historyLength"] == 1);

    auto net = client.Get("/api/sessions/" + id + "/net");
    REQUIRE(net);
    CHECK(net->status == 200);

    auto undone = client.Post("/api/sessions/" + id + "/undo", "", "application/json");
    REQUIRE(undone);
    CHECK(Json::parse(undone->body)["atRoot"] == false);

    auto malformed = client.Post("/api/sessions", "{nope", "application/json");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);

    auto preflight = client.Options("/api/sessions");
    REQUIRE(preflight);
    CHECK(preflight->status == 204);

    auto deleted = client.Delete("/api/sessions/" + id);
    REQUIRE(deleted);
    CHECK(deleted->status == 204);
    auto missing = client.Get("/api/sessions/" + id);
    REQUIRE(missing);
    CHECK(missing->status == 404);

    server.stop();
    t.join();
}
