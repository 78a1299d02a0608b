#include "scn/cli_app.hpp"

int main(int argc, char** argv) { return scn::run_cli(argc, argv); }
