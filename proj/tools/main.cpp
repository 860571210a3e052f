#include "titscone/cli.hpp"

int main(int argc, char** argv) { return titscone::run_cli(argc, argv); }
