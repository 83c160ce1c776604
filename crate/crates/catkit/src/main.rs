fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(catkit::cli::dispatch(&args[1..]));
}
