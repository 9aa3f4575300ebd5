#include "cli.hpp"

int main(int argc, char** argv) {
  return sigma_hunt::cli::main_entry(argc, argv, sigma_hunt::cli::process_environment());
}
