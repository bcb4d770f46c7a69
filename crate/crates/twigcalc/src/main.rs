fn main() { std::process::exit(twigcalc::cli::run()) }
