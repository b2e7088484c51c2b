fn main() { println!("pantograph"); }
