from .cli_runner import main

main()
