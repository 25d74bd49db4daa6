from cosetmeter.cli import cli

# This is the entry point for the CLI
app = cli.app

if __name__ == "__main__":
    app()
