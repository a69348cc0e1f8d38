from partialpoly.cli import main

main()
