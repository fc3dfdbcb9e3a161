#include "stickslip/cli.hpp"

int main(int argc, char** argv) {
    return stickslip::run_cli(argc, argv);
}
