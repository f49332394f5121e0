#include "polycube/cli.h"

int main(int argc, char** argv) {
    return polycube::cli_main(argc, argv);
}
