from schmidt_kit.cli import main

main()
