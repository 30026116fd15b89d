#include "cli.hpp"

int main(int argc, char** argv) {
    return metaforge::cli::run_cli(argc, argv);
}
