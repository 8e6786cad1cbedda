from cli.omit import main

main()
