fn main() {
    std::process::exit(wrc_cli::run());
}

mod wrc_cli {
    pub fn run() -> i32 {
        0
    }
}
