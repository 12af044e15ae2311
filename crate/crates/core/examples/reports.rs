//! Drives the command-line front end in-process and shows both formats.

use arithgroup::cli::dispatch;

fn main() {
    for args in [
        vec!["arithgroup", "--no-cache", "nf", "factor", "--field", "qi", "--prime", "5"],
        vec!["arithgroup", "--no-cache", "--format", "text", "cong", "scan", "--group", "sanov", "--pmax", "13"],
        vec!["arithgroup", "--no-cache", "nf", "factor", "--field", "qi", "--prime", "6"],
    ] {
        let out = dispatch(args.clone());
        println!("$ {}  (exit {})", args[1..].join(" "), out.code);
        print!("{}", String::from_utf8_lossy(&out.stdout));
        println!();
    }
}
