#include <iostream>

#include "semirec/cli.hpp"

int main(int argc, char** argv)
{
    semirec::RunConfig cfg;
    if (auto code = semirec::parse_run_config(argc, argv, cfg, std::cout, std::cerr))
        return *code;
    return semirec::run(cfg, std::cout, std::cerr);
}
