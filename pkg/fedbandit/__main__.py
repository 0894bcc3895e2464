#!/usr/bin/env python

if __name__ == "__main__":
    import fedbandit

    fedbandit.commands.fedbandit_cli.main()
