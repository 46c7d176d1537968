#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "lish/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string input;
    for (const auto& a : args) {
        if (a == "-") {
            input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
            break;
        }
    }
    auto result = lish::cli::run(args, input, lish::cli::Environment::from_process());
    std::cout << result.out;
    std::cerr << result.err;
    return result.code;
}
