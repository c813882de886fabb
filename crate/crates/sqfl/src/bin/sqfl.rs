fn main() {
    std::process::exit(sqfl::cli::main_entry());
}
