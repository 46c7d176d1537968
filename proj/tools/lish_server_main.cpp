#include <csignal>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "lish/server.hpp"

namespace {
httplib::Server* g_server = nullptr;
lish::server::Workspace* g_workspace = nullptr;

void handle_signal(int) {
    if (g_workspace) g_workspace->events().close();
    if (g_server) g_server->stop();
}
} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serve a directory of lish documents over HTTP", "lish-server"};
    std::string addr = "127.0.0.1:8080";
    std::string workspace_dir = ".";
    app.add_option("--addr", addr, "host:port to listen on")->envname("LISH_ADDR");
    app.add_option("--workspace", workspace_dir, "Directory of <id>.lish.json files")->envname("LISH_WORKSPACE");
    CLI11_PARSE(app, argc, argv);

    const auto colon = addr.rfind(':');
    if (colon == std::string::npos) {
        std::cerr << "--addr must be host:port\n";
        return 2;
    }
    const std::string host = addr.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(addr.substr(colon + 1));
    } catch (const std::exception&) {
        std::cerr << "bad port in --addr\n";
        return 2;
    }

    try {
        lish::server::Workspace workspace(workspace_dir);
        httplib::Server http;
        lish::server::install_routes(http, workspace);
        g_server = &http;
        g_workspace = &workspace;
        std::signal(SIGINT, handle_signal);
        std::signal(SIGTERM, handle_signal);
        std::cerr << "lish-server: serving " << workspace_dir << " on " << host << ":" << port << "\n";
        if (!http.listen(host, port)) {
            std::cerr << "cannot listen on " << addr << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
