from coverlab.cli import main

main()
