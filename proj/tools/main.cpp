#include "rigidstab/cli.hpp"

int main(int argc, char** argv) { return rigidstab::run_cli(argc, argv); }
