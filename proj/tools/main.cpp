#include "hawkeslob/cli.hpp"

int main(int argc, char** argv) {
    return hawkeslob::cli::run(argc, argv);
}
