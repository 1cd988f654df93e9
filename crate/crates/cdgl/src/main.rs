fn main() {
    std::process::exit(cdgl::frontend::cli_main(std::env::args()));
}
