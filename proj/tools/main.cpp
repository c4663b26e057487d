#include "bohl/cli.hpp"

int main(int argc, char** argv) {
    return bohl::run_cli(argc, argv);
}
