from django.core.management.base import BaseCommand

from catalog.models import catalog_list
from verifier.report import render_catalog, render_catalog_json


class Command(BaseCommand):
    help = "List the catalog entries with their parameter signatures."

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', help="emit the listing as JSON")

    def handle(self, *args, **options):
        entries = catalog_list()
        self.stdout.write(render_catalog_json(entries) if options['json'] else render_catalog(entries))
