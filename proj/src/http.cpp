#include <httplib.h>

#include "lish/governance.hpp"
#include "lish/server.hpp"

namespace lish::server {

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(dump(body), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view kind, const std::string& message) {
    send_json(res, status, Json{{"error", std::string(kind)}, {"message", message}});
}

// Runs a handler, mapping library errors onto HTTP statuses.
template <typename F>
void guarded(httplib::Response& res, F&& handler) {
    try {
        handler();
    } catch (const NotFound& e) {
        send_error(res, 404, "not-found", e.what());
    } catch (const DomainError& e) {
        send_error(res, 422, "domain-error", e.what());
    } catch (const Error& e) {
        send_error(res, 400, "bad-request", e.what());
    } catch (const nlohmann::json::exception& e) {
        send_error(res, 400, "bad-request", e.what());
    }
}

std::string event_json(const ChangeEvent& e) { return dump(Json{{"id", e.id}, {"version", e.version}}); }

} // namespace

void install_routes(httplib::Server& http, Workspace& ws) {
    http.Get("/docs", [&ws](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] {
            Json ids = Json::array();
            for (const auto& id : ws.list()) ids.push_back(id);
            send_json(res, 200, ids);
        });
    });

    http.Get(R"(/docs/([^/]+))", [&ws](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto s = ws.snapshot(req.matches[1]);
            send_json(res, 200, Json{{"id", s.id}, {"version", s.version}, {"doc", s.doc}, {"layout", s.layout}});
        });
    });

    http.Post(R"(/docs/([^/]+)/commands)", [&ws](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            Json body;
            try {
                body = Json::parse(req.body);
            } catch (const nlohmann::json::exception& e) {
                throw SchemaError(e.what(), "");
            }
            if (!body.is_object() || !body.contains("expected_version") || !body["expected_version"].is_number_integer())
                throw SchemaError("expected_version must be an integer", "/expected_version");
            if (!body.contains("commands")) throw SchemaError("missing \"commands\"", "/commands");
            auto commands = commands_from_json(body["commands"]);
            auto outcome = ws.apply_commands(req.matches[1], commands, body["expected_version"].get<std::int64_t>());
            if (auto* ok = std::get_if<Applied>(&outcome)) {
                Json diags = Json::array();
                for (const auto& d : ok->result.diagnostics) diags.push_back(d);
                send_json(res, 200, Json{{"version", ok->result.doc.version}, {"diagnostics", diags}});
            } else if (auto* conflict = std::get_if<VersionConflict>(&outcome)) {
                send_json(res, 409, Json{{"error", "version-conflict"}, {"current_version", conflict->current_version}});
            } else {
                const auto& rej = std::get<Rejected>(outcome);
                Json j{{"error", rej.status == 422 ? "rejected" : "bad-request"}, {"message", rej.message}};
                if (rej.report) j["report"] = report_to_json(*rej.report);
                send_json(res, rej.status, j);
            }
        });
    });

    http.Get(R"(/docs/([^/]+)/governed)", [&ws](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto doc = ws.document(req.matches[1]);
            send_json(res, 200, paths_to_json(governed_set(doc, LishPath::parse(req.get_param_value("path")))));
        });
    });

    http.Get(R"(/docs/([^/]+)/formula)", [&ws](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto doc = ws.document(req.matches[1]);
            send_json(res, 200, resolution_to_json(effective_formula(doc, LishPath::parse(req.get_param_value("path")))));
        });
    });

    http.Get(R"(/docs/([^/]+)/selection)", [&ws](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto doc = ws.document(req.matches[1]);
            Json sel;
            try {
                sel = Json::parse(req.get_param_value("sel"));
            } catch (const nlohmann::json::exception& e) {
                throw SchemaError(e.what(), "");
            }
            send_json(res, 200, paths_to_json(selection_cells(doc, selection_from_json(sel))));
        });
    });

    http.Get("/events", [&ws](const httplib::Request&, httplib::Response& res) {
        auto cursor = std::make_shared<std::uint64_t>(ws.events().latest());
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider("text/event-stream", [&ws, cursor](std::size_t, httplib::DataSink& sink) {
            if (ws.events().closed()) return false;
            auto events = ws.events().wait(*cursor, std::chrono::milliseconds(500));
            if (events.empty()) {
                const std::string ping = ": ping\n\n";
                return sink.write(ping.data(), ping.size());
            }
            for (const auto& e : events) {
                std::string frame = "id: " + std::to_string(e.seq) + "\ndata: " + event_json(e) + "\n\n";
                if (!sink.write(frame.data(), frame.size())) return false;
                *cursor = e.seq;
            }
            return true;
        });
    });
}

} // namespace lish::server
